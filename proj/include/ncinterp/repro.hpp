#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ncinterp/criteria.hpp"
#include "ncinterp/linalg.hpp"
#include "ncinterp/tuples.hpp"

namespace ncinterp {

/// Two-variable data c_∅ = 1, c_1 = c_2 = 1/2, c_12 = c_21 = 1/4 on
/// {∅, 1, 2, 12, 21}.
CaratheodoryInstance example_4_9_instance();

/// {∅, 1, 2, 12, 21} together with the square of one generator (1 or 2).
AdmissibleSet example_4_9_widened(int squared_letter);

/// 3×3 pair with T1 the unit shift and T2 a single off-diagonal one;
/// `swapped` exchanges the two matrices.
MatrixTuple example_4_9_tuple(bool swapped = false);

/// Random one-variable Carathéodory data c_0..c_m (d×d). With `feasible` the
/// data are moments v*G^k v of a random unitary; otherwise the moments are
/// perturbed by noise, which may or may not break feasibility.
std::vector<Matrix> random_caratheodory_sequence(int m, Eigen::Index d, bool feasible, std::uint64_t seed);

/// Random s_0..s_m (d×d) rescaled so that ‖T_s‖ is uniform in [0.5, 1.5].
std::vector<Matrix> random_schur_sequence(int m, Eigen::Index d, std::uint64_t seed);

CaratheodoryInstance one_variable_caratheodory(const std::vector<Matrix>& c);
CFInstance one_variable_cf(const std::vector<Matrix>& s);

bool repro_example_4_9(std::ostream& out);
bool repro_example_4_10(std::ostream& out);
bool repro_classical_equivalence(std::ostream& out, int instances = 200);

}  // namespace ncinterp
