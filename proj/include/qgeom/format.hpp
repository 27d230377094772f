#pragma once

// Locale-independent number formatting shared by the QASM writer, the
// verification report and the CLI.

#include <charconv>
#include <complex>
#include <string>
#include <system_error>

namespace qgeom::fmt {

namespace detail {

inline std::string to_chars_or_throw(double value, std::chars_format format, int precision) {
    if (value == 0.0) value = 0.0;  // folds -0 into +0
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, format, precision);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

}  // namespace detail

// Twelve significant digits, shortest form (printf "%.12g").
inline std::string real(double value) {
    return detail::to_chars_or_throw(value, std::chars_format::general, 12);
}

// Fixed notation with the given number of decimals.
inline std::string fixed(double value, int decimals = 12) {
    const std::string body = detail::to_chars_or_throw(value, std::chars_format::fixed, decimals);
    // A value that rounds to zero prints without a sign.
    if (body.front() == '-' && body.find_first_not_of("-0.") == std::string::npos) return body.substr(1);
    return body;
}

// "+0.707106781187-0.000000000000i" style: both parts signed, fixed decimals.
inline std::string complex_fixed(std::complex<double> value, int decimals = 12) {
    auto signed_part = [decimals](double v) {
        std::string s = fixed(v, decimals);
        return s.front() == '-' ? s : "+" + s;
    };
    return signed_part(value.real()) + signed_part(value.imag()) + "i";
}

}  // namespace qgeom::fmt
