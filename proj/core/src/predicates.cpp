#include "faceflow/detail/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace faceflow::detail {
namespace {

using rational = boost::multiprecision::cpp_rational;

// Forward-error coefficients for the naive determinant evaluations
// (Shewchuk, "Adaptive Precision Floating-Point Arithmetic and Fast Robust
// Geometric Predicates", the *errboundA constants).
constexpr double kEps = 1.1102230246251565e-16; // 2^-53
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

// The spec's absolute floor: determinants within 1e-10 of zero are always
// confirmed exactly, regardless of the relative filter.
constexpr double kAbsFloor = 1e-10;

template <typename T>
int sign_of(const T& v) {
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

// True when x holds an integer no larger than `limit` in magnitude, so that
// differences and products below stay exactly representable in the integer
// fast path.
bool small_int(double x, double limit) {
    return std::abs(x) <= limit && x == std::floor(x);
}

int orient2d_exact_int(Vec2 a, Vec2 b, Vec2 c) {
    using I = __int128;
    const I acx = (I)(int64_t)a.x - (I)(int64_t)c.x;
    const I acy = (I)(int64_t)a.y - (I)(int64_t)c.y;
    const I bcx = (I)(int64_t)b.x - (I)(int64_t)c.x;
    const I bcy = (I)(int64_t)b.y - (I)(int64_t)c.y;
    const I det = acx * bcy - acy * bcx;
    return sign_of(det);
}

int orient2d_exact_rational(Vec2 a, Vec2 b, Vec2 c) {
    const rational acx = rational(a.x) - rational(c.x);
    const rational acy = rational(a.y) - rational(c.y);
    const rational bcx = rational(b.x) - rational(c.x);
    const rational bcy = rational(b.y) - rational(c.y);
    const rational det = acx * bcy - acy * bcx;
    return sign_of(det);
}

int incircle_exact_int(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    using I = __int128;
    const I adx = (I)(int64_t)a.x - (I)(int64_t)d.x;
    const I ady = (I)(int64_t)a.y - (I)(int64_t)d.y;
    const I bdx = (I)(int64_t)b.x - (I)(int64_t)d.x;
    const I bdy = (I)(int64_t)b.y - (I)(int64_t)d.y;
    const I cdx = (I)(int64_t)c.x - (I)(int64_t)d.x;
    const I cdy = (I)(int64_t)c.y - (I)(int64_t)d.y;
    const I alift = adx * adx + ady * ady;
    const I blift = bdx * bdx + bdy * bdy;
    const I clift = cdx * cdx + cdy * cdy;
    const I det = alift * (bdx * cdy - cdx * bdy) +
                  blift * (cdx * ady - adx * cdy) +
                  clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

int incircle_exact_rational(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const rational adx = rational(a.x) - rational(d.x);
    const rational ady = rational(a.y) - rational(d.y);
    const rational bdx = rational(b.x) - rational(d.x);
    const rational bdy = rational(b.y) - rational(d.y);
    const rational cdx = rational(c.x) - rational(d.x);
    const rational cdy = rational(c.y) - rational(d.y);
    const rational alift = adx * adx + ady * ady;
    const rational blift = bdx * bdx + bdy * bdy;
    const rational clift = cdx * cdx + cdy * cdy;
    const rational det = alift * (bdx * cdy - cdx * bdy) +
                         blift * (cdx * ady - adx * cdy) +
                         clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

} // namespace

int orient2d_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double acx = a.x - c.x;
    const double acy = a.y - c.y;
    const double bcx = b.x - c.x;
    const double bcy = b.y - c.y;
    const double detleft = acx * bcy;
    const double detright = acy * bcx;
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kCcwErrBound * detsum) return det > 0 ? 1 : -1;

    // Differences of integers up to 2^30 stay exact; the 128-bit path covers
    // the determinant with plenty of headroom.
    constexpr double kIntLimit = 1073741824.0; // 2^30
    if (small_int(a.x, kIntLimit) && small_int(a.y, kIntLimit) &&
        small_int(b.x, kIntLimit) && small_int(b.y, kIntLimit) &&
        small_int(c.x, kIntLimit) && small_int(c.y, kIntLimit))
        return orient2d_exact_int(a, b, c);
    return orient2d_exact_rational(a, b, c);
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double adx = a.x - d.x;
    const double ady = a.y - d.y;
    const double bdx = b.x - d.x;
    const double bdy = b.y - d.y;
    const double cdx = c.x - d.x;
    const double cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy;
    const double cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;
    const double cdxady = cdx * ady;
    const double adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;
    const double adxbdy = adx * bdy;
    const double bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double bound = std::max(kIccErrBound * permanent, kAbsFloor);
    if (std::abs(det) > bound) return det > 0 ? 1 : -1;

    // Lifted terms are ~coordinate^4; 2^20 keeps the 128-bit sum exact.
    constexpr double kIntLimit = 1048576.0; // 2^20
    if (small_int(a.x, kIntLimit) && small_int(a.y, kIntLimit) &&
        small_int(b.x, kIntLimit) && small_int(b.y, kIntLimit) &&
        small_int(c.x, kIntLimit) && small_int(c.y, kIntLimit) &&
        small_int(d.x, kIntLimit) && small_int(d.y, kIntLimit))
        return incircle_exact_int(a, b, c, d);
    return incircle_exact_rational(a, b, c, d);
}

bool strictly_between(Vec2 a, Vec2 b, Vec2 c) {
    // On the dominant axis of the segment; exact coordinate comparisons.
    if (std::abs(b.x - a.x) >= std::abs(b.y - a.y)) {
        if (a.x == b.x) return false; // a == b: no interior
        return a.x < b.x ? (a.x < c.x && c.x < b.x) : (b.x < c.x && c.x < a.x);
    }
    return a.y < b.y ? (a.y < c.y && c.y < b.y) : (b.y < c.y && c.y < a.y);
}

} // namespace faceflow::detail
