#include "mixup/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace mixup::io {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + path.string());
    out << text;
    if (!out) throw input_error("failed writing " + path.string());
}

namespace {

bool is_sep(char c) { return c == ' ' || c == '\t' || c == ',' || c == ';' || c == '\r'; }

std::vector<std::vector<double>> parse_table(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<double> row;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_sep(line[i])) ++i;
            const auto start = i;
            while (i < line.size() && !is_sep(line[i])) ++i;
            if (i == start) continue;
            const auto token = line.substr(start, i - start);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc{} || ptr != token.data() + token.size())
                throw input_error("line " + std::to_string(line_no) + ": not a number '" + std::string(token) + "'");
            if (!std::isfinite(v)) throw input_error("line " + std::to_string(line_no) + ": non-finite value");
            row.push_back(v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

PointCloud parse_point_cloud(std::string_view text, Metric metric)
{
    if (metric == Metric::precomputed) return PointCloud::precomputed(parse_distance_matrix(text));
    return PointCloud::from_rows(parse_table(text), metric);
}

LabeledPointCloud parse_labeled_cloud(std::string_view text, Metric metric)
{
    if (metric == Metric::precomputed) throw input_error("labeled clouds need coordinates, not a distance matrix");
    auto rows = parse_table(text);
    LabeledPointCloud out;
    for (auto& r : rows) {
        if (r.size() < 2) throw input_error("labeled rows need coordinates and a label");
        const double label = r.back();
        if (label != std::floor(label)) throw input_error("labels must be integers");
        out.labels.push_back(static_cast<int>(label));
        r.pop_back();
    }
    out.cloud = PointCloud::from_rows(rows, metric);
    return out;
}

DistanceMatrix parse_distance_matrix(std::string_view text)
{
    std::vector<double> flat;
    for (const auto& row : parse_table(text)) flat.insert(flat.end(), row.begin(), row.end());
    return DistanceMatrix::from_lower_triangle(flat);
}

PointCloud read_point_cloud(const std::filesystem::path& path, Metric metric)
{
    return parse_point_cloud(read_text(path), metric);
}

LabeledPointCloud read_labeled_cloud(const std::filesystem::path& path, Metric metric)
{
    return parse_labeled_cloud(read_text(path), metric);
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path)
{
    return parse_distance_matrix(read_text(path));
}

FilteredPair read_explicit_pair(const std::filesystem::path& path)
{
    return parse_explicit_pair(read_text(path));
}

}  // namespace mixup::io
