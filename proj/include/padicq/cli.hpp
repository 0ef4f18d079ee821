#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "padicq/qcalc.hpp"

namespace padicq {

struct RunConfig {
    i64 p = 5;
    std::string q_spec = "1";  // integer or rational, = 1 mod p; "1" for the classical limit
    i64 precision = 12;        // working absolute precision, >= 4
    i64 budget = 50'000'000;   // max total summation terms, >= p^2
    std::string format = "text";
    i64 seed = 0;

    QContext context() const;
};

// exit status: 0 ok, 1 check failed, 2 usage error, 3 budget/precision exhausted
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicq
