#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixup/io.hpp"
#include "mixup/oracle.hpp"
#include "mixup/plot.hpp"
#include "mixup/report.hpp"
#include "mixup/subsample.hpp"
#include "mixup/verify.hpp"

namespace mixup::cli {

using nlohmann::json;

namespace {

std::string number(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

void emit(const RunConfig& c, std::ostream& out, const std::string& text)
{
    if (c.out) io::write_text(*c.out, text);
    else out << text;
}

bool has_points(const RunConfig& c) { return !c.a.empty(); }
bool has_filtration(const RunConfig& c) { return !c.filtration.empty(); }

double require_rmax(const RunConfig& c)
{
    if (!c.r_max) throw input_error("--rmax is required for point-cloud inputs");
    if (!(*c.r_max > 0.0) || !std::isfinite(*c.r_max)) throw input_error("--rmax must be positive and finite");
    return *c.r_max;
}

void check_degrees(const std::vector<int>& degrees, int top, const char* what)
{
    for (int k : degrees)
        if (k < 0 || k > top)
            throw input_error("degree " + std::to_string(k) + " out of range [0, " + std::to_string(top) + "] (" +
                              what + ")");
}

std::vector<int> degrees_or(const RunConfig& c, std::vector<int> fallback)
{
    return c.degrees.empty() ? fallback : c.degrees;
}

std::vector<int> range_to(int top)
{
    std::vector<int> v(static_cast<std::size_t>(std::max(top + 1, 0)));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<std::size_t> iota_from(std::size_t first, std::size_t count)
{
    std::vector<std::size_t> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

// Subset of `indices` picked by k-medoids on the sub-cloud; k = 0 keeps everything.
std::vector<std::size_t> medoid_subset(const PointCloud& x, const std::vector<std::size_t>& indices, std::size_t k,
                                       std::uint64_t seed)
{
    if (k == 0 || indices.size() <= k) return indices;
    const auto sel = k_medoids(x.select(indices), k, seed);
    std::vector<std::size_t> out;
    for (auto i : sel.indices) out.push_back(indices[i]);
    return out;
}

struct Input {
    FilteredPair pair;
    json meta;
    std::optional<double> clamp;
    int top = 0;  // largest admissible degree
};

Input load_input(const RunConfig& c)
{
    Input in;
    if (has_filtration(c)) {
        if (has_points(c)) throw input_error("give either --filtration or --a/--b, not both");
        in.pair = io::read_explicit_pair(c.filtration);
        in.pair.validate_subcomplex();
        in.top = in.pair.max_dim();
        double vmax = 0.0;
        for (CellId id = 1; id <= in.pair.size(); ++id) vmax = std::max(vmax, in.pair.value(id));
        in.clamp = c.clamp.value_or(vmax);
        in.meta = {{"source", "explicit"}, {"cells", in.pair.size()}, {"clamp", *in.clamp}};
        return in;
    }
    if (!has_points(c)) throw input_error("missing input: --filtration or --a");
    const double r_max = require_rmax(c);
    if (c.k_max < 0) throw input_error("--kmax must be non-negative");

    PointCloud x;
    std::size_t n_a = 0;
    if (c.metric == Metric::precomputed) {
        if (!c.b.empty()) throw input_error("with --metric matrix, --a holds the whole matrix; use --a-count for A");
        x = io::read_point_cloud(c.a, c.metric);
        n_a = c.a_count.value_or(x.size());
        if (n_a > x.size()) throw input_error("--a-count exceeds the number of points");
    } else {
        auto a = io::read_point_cloud(c.a, c.metric);
        n_a = a.size();
        x = c.b.empty() ? std::move(a) : PointCloud::concat(a, io::read_point_cloud(c.b, c.metric));
    }
    if (n_a == 0) throw input_error("A is empty");
    const auto a_idx = medoid_subset(x, iota_from(0, n_a), c.subsample_a, c.seed);
    const auto b_idx = medoid_subset(x, iota_from(n_a, x.size() - n_a), c.subsample_b, c.seed);
    std::vector<std::size_t> all = a_idx;
    all.insert(all.end(), b_idx.begin(), b_idx.end());

    in.pair = build_rips_pair(distance_matrix(x.select(all)), a_idx.size(), r_max, c.k_max);
    in.top = c.k_max;
    in.clamp = c.clamp.value_or(r_max);
    in.meta = {{"source", "rips"},     {"metric", to_string(c.metric)},
               {"r_max", r_max},       {"k_max", c.k_max},
               {"a_points", a_idx.size()}, {"b_points", b_idx.size()},
               {"cells", in.pair.size()},  {"clamp", *in.clamp}};
    return in;
}

std::string barcodes_csv(const std::vector<MixupBarcode>& barcodes)
{
    std::ostringstream os;
    os << "degree,birth_index,image_death_index,death_index,birth,image_death,death\n";
    auto id = [](std::optional<CellId> v) { return v ? std::to_string(*v) : std::string("inf"); };
    for (const auto& bc : barcodes)
        for (std::size_t i = 0; i < bc.triples.size(); ++i) {
            const auto& it = bc.index_triples[i];
            const auto& vt = bc.triples[i];
            os << bc.degree << ',' << it.birth << ',' << id(it.image_death) << ',' << id(it.death) << ','
               << number(vt.birth) << ',' << number(vt.image_death) << ',' << number(vt.death) << '\n';
        }
    return os.str();
}

AnalysisConfig analysis_config(const RunConfig& c)
{
    AnalysisConfig a;
    a.r_max = require_rmax(c);
    a.subsample_a = c.subsample_a ? std::optional<std::size_t>(c.subsample_a) : std::nullopt;
    a.subsample_b = c.subsample_b ? std::optional<std::size_t>(c.subsample_b) : std::nullopt;
    a.clamp = c.clamp;
    a.seed = c.seed;
    a.aggregate = c.aggregate;
    return a;
}

std::vector<std::string> names(const std::vector<int>& v)
{
    std::vector<std::string> out;
    for (int x : v) out.push_back(std::to_string(x));
    return out;
}

void single_degree_for_svg(const std::vector<int>& degrees)
{
    if (degrees.size() != 1) throw input_error("svg output takes exactly one degree");
}

// `layer step path` per line, paths relative to the manifest.
std::vector<SeriesEntry> read_series(const std::filesystem::path& manifest, Metric metric)
{
    std::istringstream lines(io::read_text(manifest));
    std::vector<SeriesEntry> series;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        int layer = 0, step = 0;
        std::string path;
        if (!(fields >> layer)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw input_error(manifest.string() + ":" + std::to_string(lineno) + ": expected `layer step path`");
        }
        if (!(fields >> step >> path))
            throw input_error(manifest.string() + ":" + std::to_string(lineno) + ": expected `layer step path`");
        std::filesystem::path p(path);
        if (p.is_relative()) p = manifest.parent_path() / p;
        series.push_back({layer, step, io::read_labeled_cloud(p, metric)});
    }
    if (series.empty()) throw input_error("series manifest lists no clouds");
    return series;
}

}  // namespace

std::vector<MixupBarcode> compute_barcodes(const RunConfig& config)
{
    const auto in = load_input(config);
    const auto degrees = degrees_or(config, range_to(in.top));
    check_degrees(degrees, in.top, has_filtration(config) ? "filtration dimension" : "--kmax");
    std::vector<MixupBarcode> out;
    for (int k : degrees) out.push_back(MixupBarcode::compute(in.pair, k, in.clamp));
    return out;
}

int cmd_mixup(const RunConfig& c, std::ostream& out, std::ostream&)
{
    const auto in = load_input(c);
    const auto degrees = degrees_or(c, range_to(in.top));
    check_degrees(degrees, in.top, has_filtration(c) ? "filtration dimension" : "--kmax");
    std::vector<MixupBarcode> barcodes;
    for (int k : degrees) barcodes.push_back(MixupBarcode::compute(in.pair, k, in.clamp));

    switch (format_or(c, Format::json)) {
    case Format::json: {
        json j;
        j["input"] = in.meta;
        j["barcodes"] = json::array();
        for (const auto& bc : barcodes) j["barcodes"].push_back(report::barcode_to_json(bc));
        emit(c, out, report::dump(j));
        break;
    }
    case Format::csv: emit(c, out, barcodes_csv(barcodes)); break;
    case Format::svg: emit(c, out, plot::mixup_barcodes_svg(barcodes)); break;
    }
    return exit_ok;
}

int cmd_pairwise(const RunConfig& c, std::ostream& out, std::ostream&)
{
    if (c.a.empty()) throw input_error("pairwise needs --a (labeled cloud)");
    const auto x = io::read_labeled_cloud(c.a, c.metric);
    const auto config = analysis_config(c);
    const auto degrees = degrees_or(c, {0});
    check_degrees(degrees, c.k_max, "--kmax");
    const auto fmt = format_or(c, Format::json);
    if (fmt == Format::svg) single_degree_for_svg(degrees);

    json j = {{"pairwise", json::array()}};
    std::string csv;
    std::string svg;
    for (int k : degrees) {
        const auto m = pairwise_matrix(x, k, config);
        auto entry = report::matrix_json(m.labels, m.values);
        entry["degree"] = k;
        j["pairwise"].push_back(std::move(entry));
        csv += "# degree " + std::to_string(k) + "\n" + report::matrix_csv(m.labels, m.values);
        plot::Style style;
        style.title = "mean mixup percentage, degree " + std::to_string(k);
        if (fmt == Format::svg) svg = plot::matrix_svg(names(m.labels), names(m.labels), m.values, style);
    }
    emit(c, out, fmt == Format::json ? report::dump(j) : fmt == Format::csv ? csv : svg);
    return exit_ok;
}

int cmd_profile(const RunConfig& c, std::ostream& out, std::ostream&)
{
    if (c.series.empty()) throw input_error("profile needs --series (manifest of `layer step path` lines)");
    const auto series = read_series(c.series, c.metric);
    const auto config = analysis_config(c);
    const auto degrees = degrees_or(c, {0, 1});
    check_degrees(degrees, c.k_max, "--kmax");
    const auto fmt = format_or(c, Format::json);
    if (fmt == Format::svg) single_degree_for_svg(degrees);

    json j = {{"aggregate", c.aggregate == ProfileAggregate::total ? "total" : "mean"}, {"profiles", json::array()}};
    std::string csv;
    std::string svg;
    for (int k : degrees) {
        const auto p = mixup_profile(series, k, config);
        j["profiles"].push_back(report::profile_json(p, k));
        csv += "# degree " + std::to_string(k) + "\n" + report::profile_csv(p);
        plot::Style style;
        style.title = "mixup profile, degree " + std::to_string(k);
        if (fmt == Format::svg) svg = plot::matrix_svg(names(p.layers), names(p.steps), p.values, style);
    }
    emit(c, out, fmt == Format::json ? report::dump(j) : fmt == Format::csv ? csv : svg);
    return exit_ok;
}

int cmd_subsample(const RunConfig& c, std::ostream& out, std::ostream&)
{
    if (c.a.empty()) throw input_error("subsample needs --a");
    const auto fmt = format_or(c, Format::csv);
    if (fmt == Format::svg) throw input_error("subsample writes csv or json");
    std::ostringstream csv;
    json j;

    if (c.labels) {
        if (!c.b.empty()) throw input_error("--labels takes a single labeled cloud");
        const auto x = io::read_labeled_cloud(c.a, c.metric);
        const std::optional<std::size_t> k = c.subsample_a ? std::optional<std::size_t>(c.subsample_a) : std::nullopt;
        csv << "label,index\n";
        j = json::object();
        for (int label : x.label_set()) {
            const auto idx = label_medoids(x, label, k, c.seed);
            for (auto i : idx) csv << label << ',' << i << '\n';
            j[std::to_string(label)] = idx;
        }
    } else {
        csv << "set,index\n";
        auto pick = [&](const std::filesystem::path& path, std::size_t k, const char* set) {
            const auto x = io::read_point_cloud(path, c.metric);
            if (x.empty()) throw input_error(path.string() + ": empty cloud");
            const auto idx = medoid_subset(x, iota_from(0, x.size()), k, c.seed);
            for (auto i : idx) csv << set << ',' << i << '\n';
            j[set] = idx;
        };
        pick(c.a, c.subsample_a, "a");
        if (!c.b.empty()) pick(c.b, c.subsample_b, "b");
    }
    emit(c, out, fmt == Format::json ? report::dump(j) : csv.str());
    return exit_ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&)
{
    std::size_t mismatches = 0;
    std::ostringstream log;
    auto check = [&](const FilteredPair& fp, const std::vector<int>& degrees, const std::string& tag) {
        for (int k : degrees) {
            const auto r = verify::check_degree(fp, k);
            if (!r.ok()) {
                ++mismatches;
                log << tag << ' ' << verify::describe(r) << '\n';
            } else if (c.random == 0) {
                log << verify::describe(r) << '\n';
            }
        }
    };

    if (c.random > 0) {
        if (has_points(c) || has_filtration(c)) throw input_error("--random replaces --a/--b/--filtration");
        std::mt19937_64 rng(c.seed);
        verify::RandomInstanceSpec spec;
        spec.max_a = 5;
        spec.max_b = 3;
        spec.k_max = c.k_max;
        const auto degrees = degrees_or(c, range_to(c.k_max));
        check_degrees(degrees, c.k_max, "--kmax");
        for (std::size_t i = 0; i < c.random; ++i) {
            const auto inst = verify::random_instance(rng, spec);
            check(inst.pair, degrees, "instance " + std::to_string(i) + ":");
        }
        log << c.random << " instances, ";
    } else {
        const auto in = load_input(c);
        const auto degrees = degrees_or(c, range_to(in.top));
        check_degrees(degrees, in.top, has_filtration(c) ? "filtration dimension" : "--kmax");
        check(in.pair, degrees, "");
    }
    if (mismatches == 0) log << "all match\n";
    else log << mismatches << " mismatch" << (mismatches == 1 ? "" : "es") << '\n';
    emit(c, out, log.str());
    return mismatches == 0 ? exit_ok : exit_mismatch;
}

int cmd_plot(const RunConfig& c, std::ostream& out, std::ostream&)
{
    if (c.format && *c.format != Format::svg) throw input_error("plot writes svg");
    if (c.result.empty()) {
        emit(c, out, plot::mixup_barcodes_svg(compute_barcodes(c)));
        return exit_ok;
    }
    json j;
    try {
        j = json::parse(io::read_text(c.result));
    } catch (const json::exception& e) {
        throw input_error(c.result.string() + ": " + e.what());
    }
    try {
        if (j.contains("barcodes")) {
            std::vector<MixupBarcode> barcodes;
            for (const auto& b : j.at("barcodes")) barcodes.push_back(report::barcode_from_json(b));
            emit(c, out, plot::mixup_barcodes_svg(barcodes));
        } else if (j.contains("pairwise") && !j.at("pairwise").empty()) {
            const auto& m = j.at("pairwise").at(0);
            const auto labels = names(m.at("labels").get<std::vector<int>>());
            plot::Style style;
            style.title = "mean mixup percentage, degree " + std::to_string(m.at("degree").get<int>());
            emit(c, out, plot::matrix_svg(labels, labels, m.at("values").get<Matrix>(), style));
        } else if (j.contains("profiles") && !j.at("profiles").empty()) {
            const auto& p = j.at("profiles").at(0);
            plot::Style style;
            style.title = "mixup profile, degree " + std::to_string(p.at("degree").get<int>());
            emit(c, out,
                 plot::matrix_svg(names(p.at("layers").get<std::vector<int>>()),
                                  names(p.at("steps").get<std::vector<int>>()), p.at("values").get<Matrix>(), style));
        } else {
            throw input_error(c.result.string() + ": no barcodes, pairwise or profiles entry");
        }
    } catch (const json::exception& e) {
        throw input_error(c.result.string() + ": " + e.what());
    }
    return exit_ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mixup barcodes of inclusions of filtered complexes"};
    app.require_subcommand(1);
    RunConfig c;
    std::string metric = "euclidean", format, aggregate = "total";
    std::optional<std::size_t> sub_a, sub_b;

    auto common = [&](CLI::App* s) {
        s->add_option("--a", c.a, "point cloud A (one point per row), labeled cloud, or distance matrix");
        s->add_option("--b", c.b, "point cloud B");
        s->add_option("--filtration", c.filtration, "explicit filtered pair: `id dim value L|K faces...` per line");
        s->add_option("--a-count", c.a_count, "with --metric matrix: the first N points form A");
        s->add_option("--metric", metric, "distance")->check(CLI::IsMember({"euclidean", "sqeuclidean", "matrix"}));
        s->add_option("--rmax", c.r_max, "largest Rips radius");
        s->add_option("--kmax", c.k_max, "largest homology degree")->capture_default_str();
        s->add_option("--degrees", c.degrees, "homology degrees")->delimiter(',');
        s->add_option("--subsample-a", sub_a, "k-medoids size for A (0 keeps all)");
        s->add_option("--subsample-b", sub_b, "k-medoids size for B (0 keeps all)");
        s->add_option("--clamp", c.clamp, "truncate values above this for statistics");
        s->add_option("--seed", c.seed, "tie-break seed")->capture_default_str();
        s->add_option("--out", c.out, "output file (stdout if absent)");
        s->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
        s->add_option("--profile-aggregate", aggregate, "profile statistic")
            ->check(CLI::IsMember({"total", "mean"}));
        return s;
    };
    auto* mixup = common(app.add_subcommand("mixup", "mixup barcodes of A -> A u B or an explicit pair"));
    auto* pairwise = common(app.add_subcommand("pairwise", "pairwise mixup matrix between labels"));
    auto* profile = common(app.add_subcommand("profile", "mixup profile over layers and steps"));
    profile->add_option("--series", c.series, "manifest with `layer step path` lines")->required();
    auto* subsample = common(app.add_subcommand("subsample", "k-medoids indices"));
    subsample->add_flag("--labels", c.labels, "--a is labeled; pick --subsample-a medoids per label");
    auto* verify = common(app.add_subcommand("verify", "cross-check against the rank-function oracle"));
    verify->add_option("--random", c.random, "check this many random Rips instances");
    auto* plot = common(app.add_subcommand("plot", "svg barcode or heat map"));
    plot->add_option("--result", c.result, "JSON written by mixup, pairwise or profile");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        c.metric = parse_metric(metric);
        if (!format.empty()) c.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::svg;
        c.aggregate = aggregate == "mean" ? ProfileAggregate::mean : ProfileAggregate::total;
        if (sub_a) c.subsample_a = *sub_a;
        if (sub_b) c.subsample_b = *sub_b;
        if (c.clamp && !(*c.clamp > 0.0)) throw input_error("--clamp must be positive");

        if (mixup->parsed()) return cmd_mixup(c, out, err);
        if (pairwise->parsed()) return cmd_pairwise(c, out, err);
        if (profile->parsed()) return cmd_profile(c, out, err);
        if (subsample->parsed()) return cmd_subsample(c, out, err);
        if (verify->parsed()) return cmd_verify(c, out, err);
        if (plot->parsed()) return cmd_plot(c, out, err);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace mixup::cli
