#include "dyadic/set.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dyadic {

Scale resolve_scale(const Rat& v) {
    if (v <= 0 || v > 1) throw std::invalid_argument("resolve_scale: need 0 < v <= 1");
    // largest k with 2^-k <= v, i.e. smallest k with v * 2^k >= 1
    int k = 0;
    Rat w = v;
    while (w < 1) {
        w *= 2;
        ++k;
    }
    return Scale{k};
}

void Set1::normalize() {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

void Set2::normalize() {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

bool Set1::contains(Cell1 c) const { return std::binary_search(cells.begin(), cells.end(), c); }
bool Set2::contains(Cell2 c) const { return std::binary_search(cells.begin(), cells.end(), c); }

namespace {

void require_coarser(Scale fine, Scale r, const char* op) {
    if (r.k > fine.k) throw std::invalid_argument(std::string(op) + ": scale finer than the set's scale");
}

}  // namespace

Set1 coarsen(const Set1& s, Scale r) {
    require_coarser(s.scale, r, "coarsen");
    Set1 out{r, {}};
    out.cells.reserve(s.cells.size());
    const int d = s.scale.k - r.k;
    for (const auto& c : s.cells) out.cells.push_back({floor_shift(c.i, d)});
    out.normalize();
    return out;
}

Set2 coarsen(const Set2& s, Scale r) {
    require_coarser(s.scale, r, "coarsen");
    Set2 out{r, {}};
    out.cells.reserve(s.cells.size());
    const int d = s.scale.k - r.k;
    for (const auto& c : s.cells) out.cells.push_back({floor_shift(c.ix, d), floor_shift(c.iy, d)});
    out.normalize();
    return out;
}

Int covering_number(const Set1& s, Scale r) { return Int(coarsen(s, r).size()); }
Int covering_number(const Set2& s, Scale r) { return Int(coarsen(s, r).size()); }

Set1 refine(const Set1& s, Scale finer) {
    if (finer.k < s.scale.k) throw std::invalid_argument("refine: target scale is coarser");
    const int d = finer.k - s.scale.k;
    Set1 out{finer, {}};
    out.cells.reserve(s.cells.size() << d);
    for (const auto& c : s.cells)
        for (std::int64_t j = 0; j < (std::int64_t(1) << d); ++j) out.cells.push_back({(c.i << d) + j});
    out.normalize();
    return out;
}

Set2 refine(const Set2& s, Scale finer) {
    if (finer.k < s.scale.k) throw std::invalid_argument("refine: target scale is coarser");
    const int d = finer.k - s.scale.k;
    Set2 out{finer, {}};
    const std::int64_t n = std::int64_t(1) << d;
    out.cells.reserve(s.cells.size() * std::size_t(n) * std::size_t(n));
    for (const auto& c : s.cells)
        for (std::int64_t jx = 0; jx < n; ++jx)
            for (std::int64_t jy = 0; jy < n; ++jy) out.cells.push_back({(c.ix << d) + jx, (c.iy << d) + jy});
    out.normalize();
    return out;
}

Set2 renormalize(const Set2& p_set, Cell2 p, Scale p_level) {
    if (p_set.scale.k < p_level.k) throw std::invalid_argument("renormalize: set must be finer than the target square");
    const int d = p_set.scale.k - p_level.k;
    Set2 out{Scale{d}, {}};
    for (const auto& c : p_set.cells)
        if (floor_shift(c.ix, d) == p.ix && floor_shift(c.iy, d) == p.iy)
            out.cells.push_back({c.ix - (p.ix << d), c.iy - (p.iy << d)});
    out.normalize();
    return out;
}

Set1 renormalize(const Set1& p_set, Cell1 p, Scale p_level) {
    if (p_set.scale.k < p_level.k) throw std::invalid_argument("renormalize: set must be finer than the target cell");
    const int d = p_set.scale.k - p_level.k;
    Set1 out{Scale{d}, {}};
    for (const auto& c : p_set.cells)
        if (floor_shift(c.i, d) == p.i) out.cells.push_back({c.i - (p.i << d)});
    out.normalize();
    return out;
}

Set1 scale_set(const Set1& s, int rho_log2) {
    if (s.scale.k + rho_log2 < 0) throw std::invalid_argument("scale_set: result scale not representable");
    Set1 out = s;
    out.scale.k += rho_log2;
    return out;
}

Set2 scale_set(const Set2& s, int rho_log2) {
    if (s.scale.k + rho_log2 < 0) throw std::invalid_argument("scale_set: result scale not representable");
    Set2 out = s;
    out.scale.k += rho_log2;
    return out;
}

Set1 neighborhood(const Set1& s, Scale r) {
    require_coarser(s.scale, r, "neighborhood");
    const std::int64_t w = std::int64_t(1) << (s.scale.k - r.k);
    Set1 out{s.scale, {}};
    out.cells.reserve(s.cells.size() * std::size_t(2 * w + 1));
    for (const auto& c : s.cells)
        for (std::int64_t d = -w; d <= w; ++d) out.cells.push_back({c.i + d});
    out.normalize();
    return out;
}

Set2 neighborhood(const Set2& s, Scale r) {
    require_coarser(s.scale, r, "neighborhood");
    const std::int64_t w = std::int64_t(1) << (s.scale.k - r.k);
    Set2 out{s.scale, {}};
    for (const auto& c : s.cells)
        for (std::int64_t dx = -w; dx <= w; ++dx)
            for (std::int64_t dy = -w; dy <= w; ++dy) out.cells.push_back({c.ix + dx, c.iy + dy});
    out.normalize();
    return out;
}

Set2 product(const Set1& a, const Set1& b) {
    if (a.scale != b.scale) throw std::invalid_argument("product: mismatched scales");
    Set2 out{a.scale, {}};
    out.cells.reserve(a.size() * b.size());
    for (const auto& ca : a.cells)
        for (const auto& cb : b.cells) out.cells.push_back({ca.i, cb.i});
    out.normalize();
    return out;
}

Set1 translate(const Set1& s, std::int64_t di) {
    Set1 out = s;
    for (auto& c : out.cells) c.i += di;
    return out;
}

void write_set(std::ostream& out, const Set1& s) {
    out << "1 " << s.scale.k << " " << s.cells.size() << "\n";
    for (const auto& c : s.cells) out << c.i << "\n";
}

void write_set(std::ostream& out, const Set2& s) {
    out << "2 " << s.scale.k << " " << s.cells.size() << "\n";
    for (const auto& c : s.cells) out << c.ix << " " << c.iy << "\n";
}

bool read_set(std::istream& in, Set1& s1, Set2& s2, int& dim) {
    int k = 0;
    std::size_t n = 0;
    if (!(in >> dim >> k >> n)) return false;
    if (dim == 1) {
        s1 = Set1{Scale{k}, {}};
        s1.cells.resize(n);
        for (auto& c : s1.cells)
            if (!(in >> c.i)) return false;
        s1.normalize();
        return true;
    }
    if (dim == 2) {
        s2 = Set2{Scale{k}, {}};
        s2.cells.resize(n);
        for (auto& c : s2.cells)
            if (!(in >> c.ix >> c.iy)) return false;
        s2.normalize();
        return true;
    }
    return false;
}

}  // namespace dyadic
