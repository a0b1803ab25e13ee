#include "commands.hpp"

#include <functional>

#include "config.hpp"
#include "rothe/error.hpp"
#include "rothe/interpolants.hpp"
#include "rothe/io.hpp"
#include "rothe/report.hpp"
#include "rothe/study.hpp"

namespace rothe::cli {

namespace fs = std::filesystem;
using io::format_double;
using io::write_atomic;

namespace {

// Maps library exceptions onto the exit-code contract.
int guarded(const char* command, std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const SolverFailure& e) {
        err << command << ": solver failure: " << e.what() << '\n';
        return SolverFailed;
    } catch (const NonConvergence& e) {
        err << command << ": solver failure: " << e.what() << '\n';
        return SolverFailed;
    } catch (const InadmissibleStep& e) {
        err << command << ": inadmissible step: " << e.what() << '\n';
        return ConfigInvalid;
    } catch (const HypothesisViolated& e) {
        err << command << ": hypothesis violated: " << e.what() << '\n';
        return ConfigInvalid;
    } catch (const ConfigError& e) {
        err << command << ": " << e.what() << '\n';
        return ConfigInvalid;
    } catch (const std::exception& e) {
        err << command << ": " << e.what() << '\n';
        return SolverFailed;
    }
}

void write_trajectory_files(const Trajectory& traj, const fs::path& dir) {
    write_atomic(dir / "trajectory.csv", trajectory_csv(traj));
    write_atomic(dir / "run.log", step_log(traj));
}

}  // namespace

int cmd_run(const fs::path& config, std::ostream& out, std::ostream& err) {
    return guarded("run", err, [&] {
        const RunConfig cfg = parse_run_config(read_file(config));
        const fs::path dir = output_dir(cfg.output);
        const BuiltRun built = build_run(cfg.setup);
        if (!built.constraint.admissible) {
            err << "run: step constraint violated: " << built.constraint.describe() << '\n';
            return static_cast<int>(ConfigInvalid);
        }
        const Trajectory traj = [&] {
            try {
                return run_scheme(built.input);
            } catch (const SolverFailure& e) {
                write_trajectory_files(e.partial(), dir);
                throw;
            }
        }();
        write_trajectory_files(traj, dir);
        write_atomic(dir / "interpolants.csv", interpolants_csv(traj));
        write_atomic(dir / "final_state.csv", final_state_csv(traj));

        const AprioriReport ap = apriori_report(traj);
        const BvqReport bvq = bvq_diagnostics(traj);
        const RecoveryReport rec = recovery_defect(traj);
        io::KeyValueReport extra;
        extra.add("bvq.q", bvq.q)
            .add("bvq.N", bvq.N)
            .add("bvq.jump_sum", bvq.jump_sum)
            .add("bvq.power_bound", bvq.power_bound)
            .add("recovery.total", rec.total)
            .add("recovery.first_interval", rec.first_interval)
            .add("recovery.last_interval", rec.last_interval)
            .add("recovery.interior", rec.interior);
        write_atomic(dir / "apriori.txt", ap.to_text() + extra.str());
        const AveragingIdentityReport eq = averaging_identity(traj);
        write_atomic(dir / "averaging_identity.txt", averaging_identity_text(eq));

        out << "N=" << traj.N() << " steps=" << traj.steps.size() << " identity.rel_diff=" << format_double(eq.rel_diff)
            << " energy.ratio=" << format_double(ap.ratio) << " output=" << dir.string() << '\n';
        return static_cast<int>(Ok);
    });
}

int cmd_study(const fs::path& plan_path, std::ostream& out, std::ostream& err) {
    return guarded("study", err, [&] {
        const StudyConfig cfg = parse_study_config(read_file(plan_path));
        const fs::path dir = output_dir(cfg.output);
        const StudyReport report = run_study(cfg.plan);
        write_atomic(dir / "study.csv", report.csv());
        write_atomic(dir / "study_summary.txt", report.summary_text());
        out << report.summary_text();
        switch (report.outcome) {
            case StudyOutcome::Passed: return static_cast<int>(Ok);
            case StudyOutcome::SolverFailed: err << "study: " << report.failure << '\n'; return static_cast<int>(SolverFailed);
            case StudyOutcome::Inadmissible: err << "study: " << report.failure << '\n'; return static_cast<int>(ConfigInvalid);
            case StudyOutcome::CriteriaFailed: break;
        }
        err << "study: " << report.failure << '\n';
        return static_cast<int>(AuditFailed);
    });
}

int cmd_check(const fs::path& config, std::ostream& out, std::ostream& err) {
    return guarded("check", err, [&] {
        const RunConfig cfg = parse_run_config(read_file(config));
        const fs::path dir = output_dir(cfg.output);
        const TimeGrid grid = TimeGrid::build(cfg.setup.grid);
        auto [suite, ledger] = build_suite(cfg.setup);
        ledger.grid_ratio_bound = grid.tau_max() / grid.tau_min();
        const AuditReport audit = audit_hypotheses(*suite, ledger, cfg.setup.audit_samples, cfg.setup.audit_seed);

        io::KeyValueReport constants;
        for (const auto& [name, value] : ledger.symbols()) constants.add("ledger." + name, value);
        std::string text = constants.str() + audit.to_text();
        bool ok = audit.passed();
        if (ledger.smallness_holds()) {
            const StepConstraintReport c = check_step_constraint(grid, ledger);
            text += "step_constraint=" + c.describe() + "\nstep_constraint.admissible=" +
                    (c.admissible ? "true" : "false") + "\n";
            ok = ok && c.admissible;
        } else {
            text += "step_constraint=unavailable: mu_A <= c_M |gamma|^p\n";
            ok = false;
        }
        write_atomic(dir / "check.txt", text);
        out << text;
        if (!ok) {
            err << "check: audit failed";
            if (!ledger.smallness_holds())
                err << " (mu_A - c_M |gamma|^p = " << format_double(ledger.smallness_slack()) << ")";
            err << '\n';
            return static_cast<int>(AuditFailed);
        }
        return static_cast<int>(Ok);
    });
}

int cmd_grid(const fs::path& spec, std::ostream& out, std::ostream& err) {
    return guarded("grid", err, [&] {
        const GridConfig cfg = parse_grid_config(read_file(spec));
        const fs::path dir = output_dir(cfg.output);
        const TimeGrid grid = TimeGrid::build(cfg.grid);
        const std::string table = grid.parameter_table_csv();
        write_atomic(dir / "grid_table.csv", table);
        write_atomic(dir / "grid_nodes.csv", grid.nodes_csv());
        out << table;
        return static_cast<int>(Ok);
    });
}

}  // namespace rothe::cli
