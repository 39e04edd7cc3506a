#include "imb/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace imb {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::size_t Rational::times_integral(std::size_t n) const {
    if (num < 0) throw std::invalid_argument("Rational: negative ratio");
    const unsigned long long prod = static_cast<unsigned long long>(num) * n;
    if (prod % static_cast<unsigned long long>(den) != 0) {
        throw std::invalid_argument("Rational: beta * n is not an integer");
    }
    return static_cast<std::size_t>(prod / static_cast<unsigned long long>(den));
}

Rational Rational::from_string(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text), 1);
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long long den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

void write_csv(const Dataset& data, std::ostream& out) {
    for (int j = 0; j < data.dim; ++j) out << 'x' << j << ',';
    out << "y\n";
    char buf[40];
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto p = data.point(i);
        for (int j = 0; j < data.dim; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", p[j]);
            out << buf << ',';
        }
        out << (data.label(i) > 0 ? "1" : "-1") << '\n';
    }
}

Dataset read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
    int dim = 0;
    for (char ch : line) if (ch == ',') ++dim;
    if (dim < 1) throw std::runtime_error("read_csv: malformed header");

    Dataset data;
    data.dim = dim;
    std::size_t positives = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        for (int j = 0; j < dim; ++j) {
            if (!std::getline(row, cell, ',')) throw std::runtime_error("read_csv: short row");
            data.xs.push_back(std::stod(cell));
        }
        if (!std::getline(row, cell)) throw std::runtime_error("read_csv: missing label");
        const int y = std::stoi(cell);
        if (y != 1 && y != -1) throw std::runtime_error("read_csv: label must be +-1");
        data.ys.push_back(static_cast<std::int8_t>(y));
        if (y > 0) ++positives;
    }
    data.n_major = positives;
    const std::size_t minority = data.size() - positives;
    if (positives > 0 && minority > 0) {
        data.beta = Rational(static_cast<long long>(minority), static_cast<long long>(positives));
    }
    return data;
}

}  // namespace imb
