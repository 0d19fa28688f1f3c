#pragma once

#include <array>
#include <memory>

#include "hslab/exterior.hpp"

namespace hslab::iwasawa {

/// The complex Heisenberg algebra: dω_1 = dω_2 = 0, dω_3 = ω_{12}.
/// Shared process-wide instance.
const NilmanifoldModel* model();

/// ω_0 = (i/2)(ω_{11̄} + ω_{22̄} + ω_{33̄}).
InvariantForm omega0();
/// Ω = ω_{123}.
InvariantForm holomorphic_volume();
/// τ_1 = ω_{13̄} − ω_{31̄}, τ_2 = i(ω_{13̄} + ω_{31̄}), τ_3 = ω_{23̄} − ω_{32̄},
/// τ_4 = i(ω_{23̄} + ω_{32̄}).
std::array<InvariantForm, 4> tau_basis();
/// ω_{121̄2̄}.
InvariantForm omega_1212();

}  // namespace hslab::iwasawa
