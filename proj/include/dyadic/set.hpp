#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dyadic/numeric.hpp"

namespace dyadic {

/// A dyadic scale delta = 2^-k, k >= 0.
struct Scale {
    int k = 0;

    Rat value() const { return pow2r(-k); }
    friend bool operator==(Scale a, Scale b) { return a.k == b.k; }
    friend bool operator!=(Scale a, Scale b) { return a.k != b.k; }
};

/// Largest dyadic scale 2^-k <= v ("next finer", Section 2.1 convention for non-dyadic scales).
Scale resolve_scale(const Rat& v);

/// Half-open cell [i*2^-k, (i+1)*2^-k).
struct Cell1 {
    std::int64_t i = 0;
    friend auto operator<=>(const Cell1&, const Cell1&) = default;
};

/// Half-open square [ix*2^-k, (ix+1)*2^-k) x [iy*2^-k, (iy+1)*2^-k).
struct Cell2 {
    std::int64_t ix = 0, iy = 0;
    friend auto operator<=>(const Cell2&, const Cell2&) = default;
};

inline std::int64_t floor_shift(std::int64_t i, int d) { return d == 0 ? i : (i >> d); }

/// Finite union of dyadic cells at one common scale; cells sorted and deduplicated.
struct Set1 {
    Scale scale;
    std::vector<Cell1> cells;

    void normalize();
    std::size_t size() const { return cells.size(); }
    bool contains(Cell1 c) const;
};

struct Set2 {
    Scale scale;
    std::vector<Cell2> cells;

    void normalize();
    std::size_t size() const { return cells.size(); }
    bool contains(Cell2 c) const;
};

// --- covering numbers: |S|_r, exact count of dyadic r-cells meeting S ---
Int covering_number(const Set1& s, Scale r);
Int covering_number(const Set2& s, Scale r);

/// Cells of S coarsened to scale r (the r-cells meeting S).
Set1 coarsen(const Set1& s, Scale r);
Set2 coarsen(const Set2& s, Scale r);

/// All descendants of S's cells at a finer scale.
Set1 refine(const Set1& s, Scale finer);
Set2 refine(const Set2& s, Scale finer);

/// S_p(P cap p): the cells of P inside p, rescaled so p becomes [0,1)^2.
Set2 renormalize(const Set2& p_set, Cell2 p, Scale p_level);
Set1 renormalize(const Set1& p_set, Cell1 p, Scale p_level);

/// Multiplies every coordinate by rho = 2^-j (j >= 0 shrinks). Cardinality preserved.
Set1 scale_set(const Set1& s, int rho_log2);
Set2 scale_set(const Set2& s, int rho_log2);

/// Cells at S's scale within sup-distance r of S: index offsets up to r/delta.
Set1 neighborhood(const Set1& s, Scale r);
Set2 neighborhood(const Set2& s, Scale r);

Set2 product(const Set1& a, const Set1& b);

/// Translate by an exact multiple of the cell side.
Set1 translate(const Set1& s, std::int64_t di);

// --- set file format: "dim k n" header, then one line of integer coordinates per cell ---
void write_set(std::ostream& out, const Set1& s);
void write_set(std::ostream& out, const Set2& s);
bool read_set(std::istream& in, Set1& s1, Set2& s2, int& dim);

}  // namespace dyadic
