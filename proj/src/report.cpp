#include "mixup/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mixup::report {

using nlohmann::json;

namespace {

json value_or_null(double v)
{
    if (std::isinf(v)) return nullptr;
    return v;
}

json id_or_null(std::optional<CellId> id)
{
    if (!id) return nullptr;
    return *id;
}

double value_from(const json& j)
{
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

std::optional<CellId> id_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<CellId>();
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json statistics_json(const MixupBarcode& bc)
{
    json s;
    try {
        s["total_mixup"] = total_mixup(bc);
        s["total_persistence"] = total_persistence(bc);
        s["total_image_persistence"] = total_image_persistence(bc);
        s["total_mixup_percentage"] = total_mixup_percentage(bc);
        s["mean_mixup_percentage"] = mean_mixup_percentage(bc);
    } catch (const std::domain_error&) {
        return nullptr;
    }
    return s;
}

json barcode_to_json(const MixupBarcode& bc)
{
    json j;
    j["degree"] = bc.degree;
    j["clamp"] = bc.clamp ? json(*bc.clamp) : json(nullptr);
    json index = json::array();
    json values = json::array();
    json zero = json::array();
    for (std::size_t i = 0; i < bc.triples.size(); ++i) {
        const auto& it = bc.index_triples[i];
        const auto& vt = bc.triples[i];
        index.push_back({it.birth, id_or_null(it.image_death), id_or_null(it.death)});
        values.push_back({vt.birth, value_or_null(vt.image_death), value_or_null(vt.death)});
        zero.push_back(vt.zero_length);
    }
    j["index_triples"] = std::move(index);
    j["triples"] = std::move(values);
    j["zero_length"] = std::move(zero);
    j["statistics"] = statistics_json(bc);
    return j;
}

MixupBarcode barcode_from_json(const json& j)
{
    MixupBarcode bc;
    bc.degree = j.at("degree").get<int>();
    if (!j.at("clamp").is_null()) bc.clamp = j.at("clamp").get<double>();
    const auto& index = j.at("index_triples");
    const auto& values = j.at("triples");
    if (index.size() != values.size()) throw std::invalid_argument("index and value triples differ in length");
    for (std::size_t i = 0; i < index.size(); ++i) {
        bc.index_triples.push_back(
            {index[i].at(0).get<CellId>(), id_from(index[i].at(1)), id_from(index[i].at(2)), bc.degree});
        ValueTriple v{values[i].at(0).get<double>(), value_from(values[i].at(1)), value_from(values[i].at(2)), false};
        v.zero_length = v.birth == v.death;
        bc.triples.push_back(v);
    }
    return bc;
}

json matrix_json(const std::vector<int>& labels, const Matrix& values)
{
    return json{{"labels", labels}, {"values", values}};
}

json profile_json(const MixupProfile& profile, int degree)
{
    return json{{"degree", degree}, {"layers", profile.layers}, {"steps", profile.steps}, {"values", profile.values}};
}

std::string matrix_csv(const std::vector<int>& labels, const Matrix& values)
{
    std::ostringstream os;
    os << "label";
    for (int l : labels) os << ',' << l;
    os << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << labels[i];
        for (double v : values[i]) os << ',' << format_number(v);
        os << '\n';
    }
    return os.str();
}

std::string profile_csv(const MixupProfile& profile)
{
    std::ostringstream os;
    os << "layer\\step";
    for (int s : profile.steps) os << ',' << s;
    os << '\n';
    for (std::size_t i = 0; i < profile.layers.size(); ++i) {
        os << profile.layers[i];
        for (double v : profile.values[i]) os << ',' << format_number(v);
        os << '\n';
    }
    return os.str();
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace mixup::report
