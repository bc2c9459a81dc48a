#include "segcert/savgol.h"

#include <algorithm>

#include "segcert/error.h"

namespace segcert {

std::vector<double> savgol_smooth(std::span<const double> series, std::size_t window,
                                  std::size_t degree) {
  if (window % 2 == 0) throw InvalidArgument("Savitzky-Golay window must be odd");
  if (degree != 1) throw InvalidArgument("only degree-1 Savitzky-Golay is supported");
  if (window < degree + 1) throw InvalidArgument("window too small for the fit degree");

  const std::size_t len = series.size();
  const std::size_t half = window / 2;
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t h = std::min({half, i, len - 1 - i});
    // Least-squares line over t = -h..h. Because sum(t) = 0 the normal
    // equations decouple and the fitted value at t = 0 is the window mean.
    double sum_y = 0.0;
    for (std::size_t j = i - h; j <= i + h; ++j) sum_y += series[j];
    out[i] = sum_y / static_cast<double>(2 * h + 1);
  }
  return out;
}

}  // namespace segcert
