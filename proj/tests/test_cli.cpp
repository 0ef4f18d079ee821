#include <doctest.h>

#include <sstream>

#include "padicq/cli.hpp"

using namespace padicq;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bernoulli subcommand succeeds in text and json form") {
    auto text = run({"bernoulli", "--p", "5", "--q", "6", "--m", "2", "--prec", "12"});
    CHECK(text.code == 0);
    CHECK(text.out.find("beta_0") != std::string::npos);

    auto js = run({"--format", "json", "bernoulli", "--p", "5", "--q", "6", "--m", "2"});
    CHECK(js.code == 0);
    CHECK(js.out.find("\"schema\": 1") != std::string::npos);
    CHECK(js.out.find("\"config\"") != std::string::npos);
    CHECK(js.out.find("\"results\"") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> args = {"integrate", "--p",      "5", "--q", "6",
                                     "--f",       "[x]^2",    "--levels", "2..5",
                                     "--format",  "json",     "--seed",   "9"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"bernoulli", "--p", "6"}).code == 2);          // not a prime
    CHECK(run({"bernoulli", "--p", "5", "--q", "3"}).code == 2);  // q != 1 mod p
    CHECK(run({"integrate", "--f", "[y]"}).code == 2);        // parse error
    CHECK(run({"integrate", "--levels", "bogus"}).code == 2);
    CHECK(run({"verify"}).code == 2);
}

TEST_CASE("failed checks exit 1") {
    // an absurdly tight tolerance forces the eq16 check to fail
    auto r = run({"verify", "eq16", "--p", "5", "--q", "6", "--P", "[x]^2", "--g", "[x]",
                  "--N", "3", "--M", "3", "--tol-exp", "30"});
    CHECK(r.code == 1);
}

TEST_CASE("budget exhaustion exits 3") {
    auto r = run({"integrate", "--p", "5", "--q", "6", "--f", "[x]", "--levels", "2..6",
                  "--budget", "200"});
    CHECK(r.code == 3);
}

TEST_CASE("verify eq16 passes at the default tolerance") {
    auto r = run({"verify", "eq16", "--p", "5", "--q", "6", "--P", "[x]^2", "--g", "[x]",
                  "--N", "4", "--M", "4"});
    CHECK(r.code == 0);
}

TEST_CASE("check-distribution on the base measure") {
    auto r = run({"check-distribution", "--p", "5", "--q", "6", "--base", "--depth", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("strong") != std::string::npos);
}
