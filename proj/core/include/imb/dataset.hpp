#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace imb {

// Exact rational, kept normalized with den > 0. Used for the imbalance
// ratio so that beta * n integrality is checkable without rounding.
struct Rational {
    long long num = 1;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_one() const { return num == den; }

    // Exact beta * n if integral, throws otherwise.
    std::size_t times_integral(std::size_t n) const;
    static Rational from_string(const std::string& text);  // "1/20" or "0.05"
};

// Labeled samples, flat row-major storage. The positive class is the
// majority with n_major examples; minority count is beta * n_major.
struct Dataset {
    std::vector<double> xs;       // size() * dim values
    std::vector<std::int8_t> ys;  // +1 / -1
    int dim = 1;
    std::size_t n_major = 0;
    Rational beta{1, 1};

    std::size_t size() const { return ys.size(); }
    std::size_t minority_count() const { return size() - n_major; }
    std::span<const double> point(std::size_t i) const {
        return {xs.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
    int label(std::size_t i) const { return ys[i]; }
};

// CSV with header x0,...,x{d-1},y and labels +-1. Values are written with
// 17 significant digits so the round trip is lossless.
void write_csv(const Dataset& data, std::ostream& out);
Dataset read_csv(std::istream& in);

}  // namespace imb
