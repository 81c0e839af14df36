#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string fixtures() {
    const char* p = std::getenv("AINFTY_FIXTURES");
    return p ? p : "tests/fixtures";
}
std::string cli() {
    const char* p = std::getenv("AINFTY_CLI");
    return p ? p : "build/ainfty";
}

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli() + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    while (fgets(buf.data(), static_cast<int>(buf.size()), p))
        out += buf.data();
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("check-relations on the directed line fixture passes with exit 0") {
    RunResult r = run("check-relations " + fixtures() + "/line_directed.ainf");
    CHECK(r.status == 0);
    CHECK(r.out.find("RESULT PASS") != std::string::npos);
}

TEST_CASE("check-functor on the shift functor") {
    RunResult r = run("check-functor " + fixtures() + "/line_directed_restr.ainf " + fixtures() +
                      "/line_directed.ainf " + fixtures() + "/shift_tau.map");
    CHECK(r.status == 0);
}

TEST_CASE("homology command prints a Betti table") {
    RunResult r = run("homology " + fixtures() + "/line_directed.ainf --source 'X^0(E)' --target "
                      "'X^2(E)' --cdeg -1..1 --window 0..3");
    CHECK(r.status == 0);
    CHECK(r.out.find("table") != std::string::npos);
}

TEST_CASE("verify-thm-a on the directed line fixture passes") {
    RunResult r = run("verify-thm-a " + fixtures() +
                      "/line_directed.ainf --window 0..4 --cdeg -2..2 --cap 4 --cap-max 6");
    CHECK(r.status == 0);
    CHECK(r.out.find("RESULT PASS") != std::string::npos);
}

TEST_CASE("verify-thm-b on the directed line fixture passes") {
    RunResult r = run("verify-thm-b " + fixtures() + "/line_directed.ainf --f " + fixtures() +
                      "/shift_f.map --m 0 --window 0..4 --cdeg -2..2 --cap 4 --cap-max 6");
    CHECK(r.status == 0);
    CHECK(r.out.find("RESULT PASS") != std::string::npos);
}

TEST_CASE("verify-bar-cobar on the two-generator cocategory") {
    RunResult r = run("verify-bar-cobar " + fixtures() + "/cocat2.coainf --adams-cap 3");
    CHECK(r.status == 0);
}

TEST_CASE("machine reports are byte-identical across runs") {
    std::string args = "coinvariants " + fixtures() + "/line_directed.ainf --format machine "
                       "--window 0..4 --cdeg -1..1";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"schema\": \"ainfty-report/1\"") != std::string::npos);
}

TEST_CASE("usage errors land on stderr with a nonzero exit") {
    RunResult r = run("localize " + fixtures() + "/line_directed.ainf --source 'X^0(E)' --target "
                      "'X^0(E)' --w nosuchmorphism");
    CHECK(r.status != 0);
    CHECK(r.out.find("error") != std::string::npos);
}
