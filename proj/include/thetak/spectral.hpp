#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "thetak/complex.hpp"
#include "thetak/resolution.hpp"

#include "json.hpp"

namespace thetak {

/**
 * Chain complex with an increasing filtration given per basis element;
 * the differential must not increase the filtration index. Bidegrees follow
 * the homotopy convention: a class in homological degree n and filtration s
 * sits at (s, t) with t = n - s, so differentials d^r have bidegree (-r, r-1).
 */
struct FilteredComplex {
    ChainComplex complex;
    std::optional<int> truncated_at;  // skeleton index when this is a truncation

    int filtration_width() const;
    void validate() const;  // d(F_s) <= F_s
};

struct PageCellKey {
    int r, s, t;
    bool operator<(const PageCellKey& o) const {
        return std::tie(r, s, t) < std::tie(o.r, o.s, o.t);
    }
};

struct SpectralSequencePages {
    const PadicContext* ctx = nullptr;
    int r_max = 0;
    int stable_r = 0;  // pages at r >= stable_r equal E-infinity
    int width = 0;
    std::optional<int> truncated_at;
    std::map<PageCellKey, Subquotient> cells;
    std::map<PageCellKey, ModulePart> canon;
    // d^r out of (r,s,t), in canonical coordinates of source and target cells.
    std::map<PageCellKey, Mat> differentials;
    bool page_coherence_ok = true;   // E^{r+1} = H(E^r, d^r), recomputed
    bool bidegree_ok = true;         // every d^r has bidegree (-r, r-1)
    std::string coherence_witness;

    ModulePart cell(int r, int s, int t) const;
    ModulePart einf(int s, int t) const;
    bool collapsed_at(int r) const;  // E^r = E^{r+1} = ... = E^inf
    nlohmann::ordered_json page_json(int r) const;
};

/// All pages up to max(r_max, width + 2); E-infinity is the stabilized page.
SpectralSequencePages pages(const FilteredComplex& f, int r_max);

enum class Verdict { CONVERGED, INCONCLUSIVE };

struct ConvergenceReport {
    Verdict verdict = Verdict::CONVERGED;
    // per anti-diagonal n: count of nonzero E-infinity terms, and whether the
    // truncation boundary is touched on that anti-diagonal.
    std::map<int, int> antidiagonal_counts;
    std::map<int, bool> boundary_touched;
    std::string note;
};

/// Prop-A.6-style criterion: each anti-diagonal in the window must have
/// finitely many nonzero terms. In the finite model the count is always
/// finite; a truncated complex whose boundary skeleton carries a nonzero
/// term on the anti-diagonal yields INCONCLUSIVE.
ConvergenceReport convergence_check(const SpectralSequencePages& p, const std::vector<int>& window);

struct ComparisonReport {
    bool pass = true;
    std::string witness;  // first mismatching bidegree
    std::map<std::pair<int, int>, std::pair<ModulePart, ModulePart>> cells;  // gr vs Einf
};

/// Certifies gr_s H_{s+t}(total) = E-infinity_{s,t} in every bidegree.
ComparisonReport abutment_compare(const FilteredComplex& f);

struct TorSSResult {
    SpectralSequencePages pages;
    ConvergenceReport convergence;
    bool e1_is_normalized_bar = true;   // E^1 columns match the normalized bar levels
    bool e2_is_tor = true;              // E^2 = Tor(A; M, N) in the trusted range
    bool collapse = true;               // E^2 = E-infinity in the trusted range
    std::string witness;
    std::vector<int> window;            // trusted anti-diagonals (s <= s_max - 1)
    std::vector<GradedModule> tor_groups;
};

/// The Tor spectral sequence driver: skeletal filtration of the normalized
/// bar complex; E^1 columns certified against the normalized bar, E^2
/// certified against resolution Tor for s <= s_max - 1.
TorSSResult tor_ss(const ThetaAlgebra& alg, const AlgebraModule& m, const AlgebraModule& n,
                   int s_max);

/// Filtered complex whose filtration is the simplicial skeleton, with total
/// degree n = level + internal degree.
FilteredComplex skeletal_filtration(const ChainComplex& normalized, int top_level);

}  // namespace thetak
