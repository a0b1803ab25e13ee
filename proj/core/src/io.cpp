#include "rothe/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "rothe/error.hpp"

namespace rothe::io {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error("format_double: conversion failed");
    return std::string(buf.data(), end);
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

CsvWriter& CsvWriter::cell(double value) { return cell(std::string_view(format_double(value))); }

CsvWriter& CsvWriter::cell(long long value) { return cell(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::cell(std::string_view text) {
    if (current_ >= columns_) throw Error("CsvWriter: too many cells in row");
    if (current_) buffer_ += ',';
    buffer_ += text;
    ++current_;
    return *this;
}

CsvWriter& CsvWriter::empty() { return cell(std::string_view{}); }

void CsvWriter::end_row() {
    while (current_ < columns_) empty();
    buffer_ += '\n';
    current_ = 0;
}

std::string CsvWriter::str() const { return buffer_; }

KeyValueReport& KeyValueReport::add(std::string key, double value) {
    entries_.emplace_back(std::move(key), format_double(value));
    return *this;
}

KeyValueReport& KeyValueReport::add(std::string key, long long value) {
    entries_.emplace_back(std::move(key), std::to_string(value));
    return *this;
}

KeyValueReport& KeyValueReport::add(std::string key, bool value) {
    entries_.emplace_back(std::move(key), value ? "true" : "false");
    return *this;
}

KeyValueReport& KeyValueReport::add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::string KeyValueReport::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

}  // namespace rothe::io
