#pragma once

#include "aifv/core.hpp"

namespace aifv::goldens {

// alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota, kappa
const std::vector<std::string>& names();
const std::string& text(std::string_view name);  // core file format
CodeTuple tuple(std::string_view name);

// μ = (1/10, 2/10, 3/10, 4/10) over a, b, c, d
SourceDist four_symbol_distribution();

struct Check {
    std::string item;
    bool pass;
    std::string detail;  // observed value, for failures
};

// Reproduces every reference value the library ships with.
std::vector<Check> run_all();

}  // namespace aifv::goldens
