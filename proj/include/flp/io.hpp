#pragma once

#include "flp/contour.hpp"
#include "flp/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace flp {

inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Comma-separated output with a header row, 17 significant digits and UNIX newlines.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : path_(path)
    {
        if (path.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
        }
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) throw IoError("cannot write " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << '\n';
        columns_ = header.size();
    }

    void row(const std::vector<double>& values)
    {
        if (values.size() != columns_) throw InvalidArgument("CSV row width differs from the header");
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
        out_ << '\n';
    }
    void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

    void close()
    {
        out_.close();
        if (out_.fail()) throw IoError("failed writing " + path_.string());
    }
    ~CsvWriter()
    {
        if (out_.is_open()) out_.close();
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

inline nlohmann::json contour_to_json(const ContourPath& path)
{
    nlohmann::json j;
    j["label"] = to_string(path.label);
    j["orientation"] = path.orientation;
    j["segments"] = nlohmann::json::array();
    for (const auto& s : path.segments) {
        nlohmann::json e;
        e["kind"] = s.kind == SegmentKind::line ? "line" : (s.kind == SegmentKind::arc ? "arc" : "ray");
        e["role"] = s.role == SegmentRole::gamma ? "gamma" : "deformation";
        e["start"] = {s.start.real(), s.start.imag()};
        e["end"] = {s.end.real(), s.end.imag()};
        e["radius"] = s.radius;
        e["theta0"] = s.theta0;
        e["theta1"] = s.theta1;
        e["inward"] = s.inward;
        j["segments"].push_back(e);
    }
    return j;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace flp
