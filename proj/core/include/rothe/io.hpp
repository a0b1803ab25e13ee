#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rothe::io {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Writes `contents` to `path` through a temporary sibling file and a rename,
// so readers never observe a partially written file.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

// Minimal CSV builder. Cells are appended left to right; numbers use
// format_double so the output is a deterministic byte stream.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& cell(double value);
    CsvWriter& cell(long long value);
    CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
    CsvWriter& cell(std::string_view text);
    CsvWriter& empty();
    void end_row();

    std::string str() const;

private:
    std::string buffer_;
    std::size_t columns_;
    std::size_t current_ = 0;
};

// Ordered key=value report, one pair per line.
class KeyValueReport {
public:
    KeyValueReport& add(std::string key, double value);
    KeyValueReport& add(std::string key, long long value);
    KeyValueReport& add(std::string key, int value) { return add(std::move(key), static_cast<long long>(value)); }
    KeyValueReport& add(std::string key, bool value);
    KeyValueReport& add(std::string key, std::string value);

    std::string str() const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace rothe::io
