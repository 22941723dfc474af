#pragma once

#include <string>
#include <vector>

#include "cgt/raag.hpp"
#include "cgt/subdirect.hpp"

namespace cgt::fixtures {

/// P4, P4' (primed generators), F2, F2', Z, Z2, P4_SPLITTING, TUBULAR_AB,
/// TUBULAR_TWO and BS(m,n) for any nonzero m, n.
std::vector<std::string> group_names();
GroupModel group(const std::string& name);

/// diagonal_p4, bb_kernel_p4xp4, z_kernel_p4xp4, full_p4xp4,
/// miller_free_index.
std::vector<std::string> subdirect_names();
SubdirectInput subdirect(const std::string& name);

/// Defining graphs for class checks: P4, C4, C5, K4, TRIANGLE, PATH5, STAR4,
/// GEM (P4 plus a vertex joined to all four).
std::vector<std::string> graph_names();
SimplicialGraph graph(const std::string& name);

/// a^2, ab, ac, ad in P4: the index-2 kernel of the mod-2 length map.
std::vector<Word> droms_index2_subgroup();
/// ab^-1, bc^-1, cd^-1 in P4.
std::vector<Word> p4_kernel_basis();
/// P4 -> Z sending every generator to 1.
HomToZn p4_length_map();

}  // namespace cgt::fixtures
