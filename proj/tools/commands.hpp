#pragma once

#include <filesystem>
#include <ostream>

namespace rothe::cli {

// Exit codes shared by every command.
enum Exit : int { Ok = 0, SolverFailed = 2, ConfigInvalid = 3, AuditFailed = 4 };

int cmd_run(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_study(const std::filesystem::path& plan, std::ostream& out, std::ostream& err);
int cmd_check(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_grid(const std::filesystem::path& spec, std::ostream& out, std::ostream& err);

}  // namespace rothe::cli
