#pragma once

#include <vector>

#include "hkq/setup.hpp"

namespace hkq {

/** A critical subset J: a flat of the weight matroid. */
struct Flat
{
    IndexSet J;
    std::size_t rank = 0;  ///< dim t_J
    std::size_t codim = 0; ///< d - rank
    bool is_proper = false;

    friend bool operator==(const Flat&, const Flat&) = default;
};

/// Enumeration refuses setups with more weights than this unless told otherwise.
inline constexpr std::size_t default_max_n = 14;

/// {j : u_j in span_Q{u_s : s in S}}. Parallel weights are distinct elements.
IndexSet closure(const TorusSetup& s, const IndexSet& S);

bool is_critical(const TorusSetup& s, const IndexSet& J);

/// All flats sorted by (|J|, lexicographic). Throws EnumerationTooLarge when N > max_n.
std::vector<Flat> enumerate_flats(const TorusSetup& s, std::size_t max_n = default_max_n);

std::vector<IndexSet> flat_sets(const std::vector<Flat>& flats);

IndexSet complement(const IndexSet& J, std::size_t n);
IndexSet full_set(std::size_t n);

}  // namespace hkq
