#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aemt {

using int128 = __int128;

// Thrown when a documented operation precondition does not hold.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a postcondition or certification check fails. Reaching this
// means either a bug or an instance that falsifies an argument the code
// mirrors; such instances are kept as regression cases.
struct internal_check_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Input file / format problems. The message carries a line number when the
// source is line-oriented.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t binom3(std::uint64_t n) {
    if (n < 3) return 0;
    return n * (n - 1) * (n - 2) / 6;
}

// floor(sqrt(m)) for m >= 0
inline std::int64_t isqrt_floor(std::int64_t m) {
    if (m < 0) throw precondition_error("isqrt_floor: negative argument");
    std::int64_t r = static_cast<std::int64_t>(std::uint64_t(__builtin_sqrt(double(m))));
    while (r > 0 && r * r > m) --r;
    while ((r + 1) * (r + 1) <= m) ++r;
    return r;
}

// floor(cbrt(m)) for m >= 0
inline std::int64_t icbrt_floor(std::int64_t m) {
    if (m < 0) throw precondition_error("icbrt_floor: negative argument");
    std::int64_t r = static_cast<std::int64_t>(__builtin_cbrt(double(m)));
    while (r > 0 && r * r * r > m) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= m) ++r;
    return r;
}

} // namespace aemt
