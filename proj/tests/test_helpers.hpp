#pragma once

#include <vector>

#include "qkdcoex/raman_table.hpp"

namespace qkdcoex::test {

/// Synthetic table with a constant cross-section over a wide classical range
/// for one quantum band. Keeps correctness checks independent of the bundled
/// empirical data.
inline RamanTable flat_table(double rho, double quantum_nm, double classical_lo_nm = 1400.0,
                             double classical_hi_nm = 1650.0) {
  return RamanTable::from_rows(
      {{classical_lo_nm, quantum_nm, rho}, {classical_hi_nm, quantum_nm, rho}},
      "<flat synthetic>");
}

/// Flat synthetic table covering both the C- and O-band quantum channels.
inline RamanTable flat_table_both_bands(double rho_c, double rho_o) {
  return RamanTable::from_rows({{1400.0, 1537.0, rho_c},
                                {1650.0, 1537.0, rho_c},
                                {1400.0, 1310.0, rho_o},
                                {1650.0, 1310.0, rho_o}},
                               "<flat synthetic>");
}

}  // namespace qkdcoex::test
