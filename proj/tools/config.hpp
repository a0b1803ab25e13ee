#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rothe/setup.hpp"
#include "rothe/study.hpp"

namespace rothe::cli {

struct RunConfig {
    RunSetup setup;
    std::filesystem::path output = "rothe_out";
};

struct StudyConfig {
    StudyPlan plan;
    std::filesystem::path output = "rothe_out";
};

struct GridConfig {
    GridSpec grid;
    std::filesystem::path output = "rothe_out";
};

// Strict parsers: unknown keys and wrong types raise ConfigError naming the
// JSON pointer of the offending field; syntax errors name line and column.
RunConfig parse_run_config(const std::string& text);
StudyConfig parse_study_config(const std::string& text);
// Accepts a bare grid object or {"grid": {...}, "output": "..."}.
GridConfig parse_grid_config(const std::string& text);

std::string read_file(const std::filesystem::path& path);

// ROTHE_OUTPUT_DIR when set and non-empty, `configured` otherwise.
std::filesystem::path output_dir(const std::filesystem::path& configured);

}  // namespace rothe::cli
