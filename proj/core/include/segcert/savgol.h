#ifndef SEGCERT_SAVGOL_H_
#define SEGCERT_SAVGOL_H_

#include <cstddef>
#include <span>
#include <vector>

namespace segcert {

// Savitzky-Golay smoothing of a uniformly spaced series: a least-squares
// polynomial fit of `degree` over `window` neighbours, evaluated at the
// centre. Near the ends the window shrinks symmetrically to the neighbours
// available on both sides. Only degree 1 is supported.
std::vector<double> savgol_smooth(std::span<const double> series, std::size_t window,
                                  std::size_t degree = 1);

}  // namespace segcert

#endif  // SEGCERT_SAVGOL_H_
