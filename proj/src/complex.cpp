#include "mixup/complex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace mixup {

CellId FilteredPair::add_cell(int dim, double value, Member member, std::span<const CellId> boundary,
                              std::span<const std::uint32_t> vertices)
{
    const auto id = static_cast<CellId>(size() + 1);
    const std::string where = "cell " + std::to_string(id) + ": ";
    if (dim < 0) throw input_error(where + "negative dimension");
    if (!std::isfinite(value)) throw input_error(where + "non-finite filtration value");
    if (!values_.empty() && value < values_.back())
        throw input_error(where + "filtration values must be non-decreasing");

    std::vector<CellId> sorted(boundary.begin(), boundary.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error(where + "repeated boundary cell");
    for (CellId f : sorted) {
        if (f == 0 || f >= id) throw input_error(where + "boundary cell " + std::to_string(f) + " does not precede it");
        if (dims_[f - 1] != dim - 1)
            throw input_error(where + "boundary cell " + std::to_string(f) + " has dimension " +
                              std::to_string(dims_[f - 1]) + ", expected " + std::to_string(dim - 1));
    }

    dims_.push_back(dim);
    values_.push_back(value);
    members_.push_back(member);
    boundary_ids_.insert(boundary_ids_.end(), sorted.begin(), sorted.end());
    boundary_offsets_.push_back(boundary_ids_.size());
    vertex_ids_.insert(vertex_ids_.end(), vertices.begin(), vertices.end());
    vertex_offsets_.push_back(vertex_ids_.size());
    max_dim_ = std::max(max_dim_, dim);
    return id;
}

Cell FilteredPair::cell(CellId id) const
{
    return Cell{id, dim(id), value(id), member(id), boundary(id), vertices(id)};
}

std::span<const CellId> FilteredPair::boundary(CellId id) const
{
    const auto b = boundary_offsets_[id - 1];
    return {boundary_ids_.data() + b, boundary_offsets_[id] - b};
}

std::span<const std::uint32_t> FilteredPair::vertices(CellId id) const
{
    const auto b = vertex_offsets_[id - 1];
    return {vertex_ids_.data() + b, vertex_offsets_[id] - b};
}

std::size_t FilteredPair::count(Member m) const
{
    return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), m));
}

void FilteredPair::validate_subcomplex() const
{
    for (CellId id = 1; id <= size(); ++id) {
        if (!in_L(id)) continue;
        for (CellId f : boundary(id))
            if (!in_L(f))
                throw input_error("L is not a subcomplex: L-cell " + std::to_string(id) + " has face " +
                                  std::to_string(f) + " in K\\L");
    }
}

FilteredPair restrict_to_L(const FilteredPair& fp)
{
    fp.validate_subcomplex();
    std::vector<CellId> new_id(fp.size() + 1, 0);
    FilteredPair out;
    std::vector<CellId> faces;
    for (CellId id = 1; id <= fp.size(); ++id) {
        if (!fp.in_L(id)) continue;
        faces.clear();
        for (CellId f : fp.boundary(id)) faces.push_back(new_id[f]);
        new_id[id] = out.add_cell(fp.dim(id), fp.value(id), Member::L, faces, fp.vertices(id));
        out.labels_.push_back(fp.label(id));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vietoris–Rips construction

namespace {

struct SimplexRecord {
    double value;
    std::uint32_t dim;
    bool mixed;
    std::size_t offset;  // into the vertex buffer, dim + 1 entries
};

struct CliqueBuffer {
    std::vector<SimplexRecord> records;
    std::vector<std::uint32_t> vertices;
};

class BinomialTable {
public:
    BinomialTable(std::size_t n, std::size_t k) : k_(k + 1), table_((n + 1) * (k + 1), 0)
    {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t j = 1; j <= std::min(i, k); ++j) {
                const auto a = at(i - 1, j - 1);
                const auto b = j <= i - 1 ? at(i - 1, j) : 0;
                if (a > std::numeric_limits<std::uint64_t>::max() - b)
                    throw input_error("too many points for the requested simplex dimension");
                at(i, j) = a + b;
            }
        }
    }
    std::uint64_t operator()(std::size_t n, std::size_t k) const { return table_[n * k_ + k]; }

private:
    std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * k_ + k]; }
    std::size_t k_;
    std::vector<std::uint64_t> table_;
};

// Combinatorial number system key of a sorted vertex tuple; unique within a dimension.
std::uint64_t simplex_key(std::span<const std::uint32_t> vertices, const BinomialTable& binom)
{
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) key += binom(vertices[i], i + 1);
    return key;
}

void check_rips_args(const DistanceMatrix& distances, std::size_t a_count, double r_max, int k_max)
{
    if (a_count == 0) throw input_error("point cloud A must be nonempty");
    if (a_count > distances.size()) throw input_error("A has more points than the distance matrix");
    if (std::isnan(r_max) || r_max < 0.0) throw input_error("r_max must be >= 0");
    if (k_max < 0) throw input_error("k_max must be >= 0");
    if (distances.size() > std::numeric_limits<std::uint32_t>::max())
        throw input_error("too many points");
}

std::vector<std::vector<std::uint32_t>> higher_neighbors(const DistanceMatrix& d, double r_max)
{
    const auto n = d.size();
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = v + 1; u < n; ++u)
            if (d(v, u) <= r_max) out[v].push_back(static_cast<std::uint32_t>(u));
    return out;
}

// All cliques of dimension 1..max_dim whose smallest vertex is `root`.
void enumerate_cofaces(std::uint32_t root, const DistanceMatrix& d,
                       const std::vector<std::vector<std::uint32_t>>& nbrs, std::size_t a_count, int max_dim,
                       CliqueBuffer& buf)
{
    std::vector<std::uint32_t> clique{root};
    auto recurse = [&](auto&& self, const std::vector<std::uint32_t>& candidates, double value) -> void {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const std::uint32_t u = candidates[c];
            double v = value;
            for (auto w : clique) v = std::max(v, d(w, u));
            clique.push_back(u);
            const bool mixed = std::any_of(clique.begin(), clique.end(),
                                           [&](std::uint32_t w) { return w >= a_count; });
            buf.records.push_back({v, static_cast<std::uint32_t>(clique.size() - 1), mixed, buf.vertices.size()});
            buf.vertices.insert(buf.vertices.end(), clique.begin(), clique.end());
            if (static_cast<int>(clique.size()) <= max_dim) {
                std::vector<std::uint32_t> next;
                const auto& nu = nbrs[u];
                std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1, candidates.end(),
                                      nu.begin(), nu.end(), std::back_inserter(next));
                if (!next.empty()) self(self, next, v);
            }
            clique.pop_back();
        }
    };
    if (max_dim >= 1) recurse(recurse, nbrs[root], 0.0);
}

FilteredPair assemble_pair(std::size_t n_points, int max_dim, CliqueBuffer&& buf)
{
    // vertices first in the record list; they sort to the front anyway (value 0, dim 0)
    std::vector<std::size_t> order(buf.records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& recs = buf.records;
    const auto& verts = buf.vertices;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = recs[x];
        const auto& b = recs[y];
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.mixed != b.mixed) return !a.mixed;
        return std::lexicographical_compare(verts.begin() + static_cast<std::ptrdiff_t>(a.offset),
                                            verts.begin() + static_cast<std::ptrdiff_t>(a.offset + a.dim + 1),
                                            verts.begin() + static_cast<std::ptrdiff_t>(b.offset),
                                            verts.begin() + static_cast<std::ptrdiff_t>(b.offset + b.dim + 1));
    });

    const BinomialTable binom(n_points, static_cast<std::size_t>(max_dim) + 1);
    // per dimension: (key, id), sorted by key once the dimension is complete
    std::vector<std::vector<std::pair<std::uint64_t, CellId>>> index(static_cast<std::size_t>(max_dim) + 1);
    {
        std::vector<std::size_t> per_dim(index.size(), 0);
        for (const auto& r : recs) ++per_dim[r.dim];
        for (std::size_t d = 0; d < index.size(); ++d) index[d].reserve(per_dim[d]);
    }

    FilteredPair fp;
    CellId next = 1;
    for (auto o : order) {
        const auto& r = recs[o];
        std::span<const std::uint32_t> vs(verts.data() + r.offset, r.dim + 1);
        index[r.dim].emplace_back(simplex_key(vs, binom), next++);
    }
    for (auto& idx : index) std::sort(idx.begin(), idx.end());

    std::vector<CellId> faces;
    std::vector<std::uint32_t> facet;
    for (auto o : order) {
        const auto& r = recs[o];
        std::span<const std::uint32_t> vs(verts.data() + r.offset, r.dim + 1);
        faces.clear();
        if (r.dim > 0) {
            const auto& lookup = index[r.dim - 1];
            for (std::size_t skip = 0; skip < vs.size(); ++skip) {
                facet.clear();
                for (std::size_t i = 0; i < vs.size(); ++i)
                    if (i != skip) facet.push_back(vs[i]);
                const auto key = simplex_key(facet, binom);
                auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(key, CellId{0}));
                faces.push_back(it->second);
            }
        }
        fp.add_cell(static_cast<int>(r.dim), r.value, r.mixed ? Member::K_minus_L : Member::L, faces, vs);
    }
    return fp;
}

void append_vertices(std::size_t n, std::size_t a_count, CliqueBuffer& buf)
{
    for (std::uint32_t v = 0; v < n; ++v) {
        buf.records.push_back({0.0, 0, v >= a_count, buf.vertices.size()});
        buf.vertices.push_back(v);
    }
}

}  // namespace

namespace serial {

FilteredPair build_rips_pair(const DistanceMatrix& distances, std::size_t a_count, double r_max, int k_max)
{
    check_rips_args(distances, a_count, r_max, k_max);
    const auto n = distances.size();
    const auto nbrs = higher_neighbors(distances, r_max);
    CliqueBuffer buf;
    append_vertices(n, a_count, buf);
    for (std::uint32_t v = 0; v < n; ++v) enumerate_cofaces(v, distances, nbrs, a_count, k_max + 1, buf);
    return assemble_pair(n, k_max + 1, std::move(buf));
}

}  // namespace serial

FilteredPair build_rips_pair(const DistanceMatrix& distances, std::size_t a_count, double r_max, int k_max)
{
    check_rips_args(distances, a_count, r_max, k_max);
    const auto n = distances.size();
    const auto nbrs = higher_neighbors(distances, r_max);
    std::vector<CliqueBuffer> per_root(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(n); ++v)
        enumerate_cofaces(static_cast<std::uint32_t>(v), distances, nbrs, a_count, k_max + 1,
                          per_root[static_cast<std::size_t>(v)]);

    CliqueBuffer buf;
    append_vertices(n, a_count, buf);
    std::size_t total = 0, total_vertices = 0;
    for (const auto& b : per_root) {
        total += b.records.size();
        total_vertices += b.vertices.size();
    }
    buf.records.reserve(buf.records.size() + total);
    buf.vertices.reserve(buf.vertices.size() + total_vertices);
    for (auto& b : per_root) {
        const auto shift = buf.vertices.size();
        for (auto r : b.records) {
            r.offset += shift;
            buf.records.push_back(r);
        }
        buf.vertices.insert(buf.vertices.end(), b.vertices.begin(), b.vertices.end());
        b = CliqueBuffer{};
    }
    return assemble_pair(n, k_max + 1, std::move(buf));
}

FilteredPair build_rips_pair(const PointCloud& a, const PointCloud& b, double r_max, int k_max)
{
    if (a.empty()) throw input_error("point cloud A must be nonempty");
    if (a.metric() == Metric::precomputed) {
        if (!b.empty())
            throw input_error("a precomputed matrix must cover A ∪ B; pass one matrix with the size of A");
        return build_rips_pair(a.precomputed_distances(), a.size(), r_max, k_max);
    }
    if (!b.empty() && b.dim() != a.dim()) throw input_error("A and B have different dimensions");
    if (!b.empty() && b.metric() != a.metric()) throw input_error("A and B use different metrics");
    const auto all = PointCloud::concat(a, b);
    return build_rips_pair(distance_matrix(all), a.size(), r_max, k_max);
}

// ---------------------------------------------------------------------------
// Explicit filtrations

namespace {

template <typename T>
T parse_number(std::string_view token, std::size_t line_no, const char* what)
{
    T value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw input_error("line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
            ++i;
        const auto start = i;
        while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
            ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

struct ParsedCell {
    int dim;
    double value;
    Member member;
    std::vector<CellId> boundary;
    std::size_t line_no;
};

}  // namespace

FilteredPair parse_explicit_pair(std::string_view text)
{
    std::map<CellId, ParsedCell> cells;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 4)
            throw input_error("line " + std::to_string(line_no) + ": expected 'id dim value member boundary...'");

        const auto id = parse_number<CellId>(tokens[0], line_no, "id");
        ParsedCell c;
        c.line_no = line_no;
        c.dim = parse_number<int>(tokens[1], line_no, "dimension");
        c.value = parse_number<double>(tokens[2], line_no, "value");
        if (tokens[3] == "L") {
            c.member = Member::L;
        } else if (tokens[3] == "K") {
            c.member = Member::K_minus_L;
        } else {
            throw input_error("line " + std::to_string(line_no) + ": member must be L or K");
        }
        for (std::size_t t = 4; t < tokens.size(); ++t)
            c.boundary.push_back(parse_number<CellId>(tokens[t], line_no, "boundary id"));
        if (id == 0) throw input_error("line " + std::to_string(line_no) + ": ids start at 1");
        if (!cells.emplace(id, std::move(c)).second)
            throw input_error("line " + std::to_string(line_no) + ": duplicate id " + std::to_string(id));
    }

    FilteredPair fp;
    CellId expected = 1;
    for (const auto& [id, c] : cells) {
        if (id != expected)
            throw input_error("cell ids must be 1..n without gaps; missing id " + std::to_string(expected));
        try {
            fp.add_cell(c.dim, c.value, c.member, c.boundary);
        } catch (const input_error& e) {
            throw input_error("line " + std::to_string(c.line_no) + ": " + e.what());
        }
        ++expected;
    }
    return fp;
}

std::string format_explicit_pair(const FilteredPair& fp)
{
    std::ostringstream os;
    os.precision(17);
    for (CellId id = 1; id <= fp.size(); ++id) {
        os << id << ' ' << fp.dim(id) << ' ' << fp.value(id) << ' ' << (fp.in_L(id) ? 'L' : 'K');
        for (CellId f : fp.boundary(id)) os << ' ' << f;
        os << '\n';
    }
    return os.str();
}

}  // namespace mixup
