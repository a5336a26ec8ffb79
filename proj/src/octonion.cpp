#include "hsl/octonion.hpp"

namespace hsl {

Eigen::Matrix<double, 8, 8> left_mult_matrix(const Octonion& v) {
    Eigen::Matrix<double, 8, 8> m;
    for (int k = 0; k < 8; ++k) {
        const Octonion col = v * Octonion::unit(k);
        for (int r = 0; r < 8; ++r) m(r, k) = col.c[r];
    }
    return m;
}

}  // namespace hsl
