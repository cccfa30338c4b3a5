#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// run the built binary through the shell, stderr folded into stdout
RunResult run(const std::string& args) {
    const std::string cmd = std::string(ZETAFORGE_BIN_DIR) + "/zetaforge " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

double result_num(const json& j, const std::string& key) {
    return std::stod(j.at("results").at(key).get<std::string>());
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/zetaforge_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("field-info reports the invariants") {
    RunResult r = run("field-info -d -4");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("schema_version").is_string());
    REQUIRE(j.at("command") == "field-info");
    REQUIRE(j.at("results").at("h") == "1");
    REQUIRE(j.at("results").at("w") == "4");
    REQUIRE(j.at("results").at("signature") == "(0,1)");
    REQUIRE(std::abs(result_num(j, "residue") - 0.7853981634) < 1e-9);
    // v_K opens with v(1) = 1 and v(2) = 1 for D = -4
    REQUIRE(j.at("results").at("v_K").get<std::string>().substr(0, 3) == "1;1");
    REQUIRE(j.at("elapsed_ms").is_number_integer());
    REQUIRE(j.at("elapsed_ms").get<long long>() >= 0);

    RunResult r5 = run("field-info -d 5");
    REQUIRE(r5.exit_code == 0);
    json j5 = json::parse(r5.out);
    REQUIRE(std::abs(result_num(j5, "regulator") - 0.4812118251) < 1e-9);
    REQUIRE(j5.at("results").at("signature") == "(2,0)");
}

TEST_CASE("field-info rejects a non-fundamental discriminant") {
    RunResult r = run("field-info -d 9");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.out.find("fundamental") != std::string::npos);
}

TEST_CASE("zeta computes a single route") {
    RunResult r = run("zeta -d 5 -s 2 --route closed");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("inputs").at("route") == "closed");
    REQUIRE(std::abs(result_num(j, "value_re") - 1.1616711956186385498) < 1e-12);
    REQUIRE(std::abs(result_num(j, "value_im")) < 1e-15);
    REQUIRE(result_num(j, "err") >= 0.0);
}

TEST_CASE("zeta --all-routes emits every applicable route with deltas") {
    RunResult r = run("zeta -d -4 -s 3 --all-routes");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    double direct = result_num(j, "direct_re");
    double factored = result_num(j, "factored_re");
    double closed = result_num(j, "closed_re");
    REQUIRE(std::abs(direct - factored) < 1e-4);
    REQUIRE(std::abs(closed - factored) < 1e-10);
    REQUIRE(j.at("results").contains("delta_direct_factored"));
    REQUIRE(j.at("results").contains("delta_factored_closed"));
    // zagier needs s = 2 and wilton needs even s >= 4 here, so neither appears
    REQUIRE(!j.at("results").contains("zagier_re"));
    REQUIRE(!j.at("results").contains("wilton_re"));
}

TEST_CASE("zeta rejects incompatible routes with exit 2") {
    REQUIRE(run("zeta -d 5 -s 2 --route zagier").exit_code == 2);
    REQUIRE(run("zeta -d 5 -s 1 --route factored").exit_code == 2);
    REQUIRE(run("zeta -d 5 -s 0.5 --route direct").exit_code == 2);
    REQUIRE(run("zeta -d -4 -s 2 --route closed").exit_code == 2);
    REQUIRE(run("zeta -d 5 -s 2 --route nonsense").exit_code == 2);
}

TEST_CASE("verify-wilton streams one JSON record per cutoff") {
    RunResult r = run("verify-wilton -d 0 -u 2.5 -v 3.5 -M 50,100");
    REQUIRE(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    json a = json::parse(ls[0]);
    json b = json::parse(ls[1]);
    REQUIRE(a.at("inputs").at("M") == "50");
    REQUIRE(b.at("inputs").at("M") == "100");
    REQUIRE(result_num(b, "residual") < result_num(a, "residual"));
}

TEST_CASE("verify-wilton --csv uses the pinned column set") {
    RunResult r = run("verify-wilton -d 0 -u 2 -v 3 -M 50,100 --csv");
    REQUIRE(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 3);
    REQUIRE(ls[0] == "M,residual,tail_estimate,flags");
    REQUIRE(ls[1].substr(0, 3) == "50,");
    REQUIRE(ls[2].substr(0, 4) == "100,");
}

TEST_CASE("verify-wilton names the violated constraint") {
    RunResult r = run("verify-wilton -d 5 -u 1 -v 2 -M 50");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.out.find("u = 1") != std::string::npos);
    REQUIRE(run("verify-wilton -d 0 -u 0.5 -v 1.5 -M 50").exit_code == 2);
    REQUIRE(run("verify-wilton -d 0 -u 2 -v 3 -M 100,50").exit_code == 2);
}

TEST_CASE("table: empty batch emits the bare header and exit 0") {
    std::string path = write_temp("empty.csv", "");
    RunResult r = run("table " + path);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "D,s,route,value_re,value_im,err,flags\n");
}

TEST_CASE("table: bad rows are reported in place, good rows intact, exit 1") {
    std::string path = write_temp("mixed.csv",
                                  "5,2,closed\n"
                                  "9,2,factored\n"
                                  "-4,3,closed\n");
    RunResult r = run("table " + path);
    REQUIRE(r.exit_code == 1);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    REQUIRE(ls[0] == "D,s,route,value_re,value_im,err,flags");
    REQUIRE(ls[1].substr(0, 12) == "5,2,closed,1");
    REQUIRE(ls[2].find("error:") != std::string::npos);
    REQUIRE(ls[3].substr(0, 12) == "-4,3,closed,");
    // row order is input order, and the good rows carry no error marker
    REQUIRE(ls[1].find("error:") == std::string::npos);
    REQUIRE(ls[3].find("error:") == std::string::npos);
}

TEST_CASE("ZETAFORGE_MAX_TERMS seeds the default and flags override it") {
    RunResult env_only = run("zeta -d 5 -s 2 --route direct");
    json j0 = json::parse(env_only.out);
    REQUIRE(j0.at("inputs").at("max_terms") == "400");
    {
        const std::string cmd = "ZETAFORGE_MAX_TERMS=50 " + std::string(ZETAFORGE_BIN_DIR) +
                                "/zetaforge zeta -d 5 -s 2 --route direct 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::string out;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        REQUIRE(WEXITSTATUS(pclose(p)) == 0);
        json j = json::parse(out);
        REQUIRE(j.at("inputs").at("max_terms") == "50");
    }
    {
        const std::string cmd = "ZETAFORGE_MAX_TERMS=50 " + std::string(ZETAFORGE_BIN_DIR) +
                                "/zetaforge zeta -d 5 -s 2 --route direct --max-terms 100 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::string out;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        REQUIRE(WEXITSTATUS(pclose(p)) == 0);
        json j = json::parse(out);
        REQUIRE(j.at("inputs").at("max_terms") == "100");
    }
}

TEST_CASE("output is deterministic apart from elapsed_ms") {
    RunResult a = run("zeta -d -7 -s 2 --route zagier");
    RunResult b = run("zeta -d -7 -s 2 --route zagier");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    json ja = json::parse(a.out);
    json jb = json::parse(b.out);
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    REQUIRE(ja == jb);
}

TEST_CASE("JSON output round-trips to the same key set") {
    RunResult r = run("verify-wilton -d 0 -u 2 -v 2 -M 50");
    json j = json::parse(lines_of(r.out)[0]);
    json again = json::parse(j.dump());
    REQUIRE(again == j);
    for (const char* key : {"schema_version", "command", "inputs", "results", "flags",
                            "elapsed_ms"})
        REQUIRE(j.contains(key));
}

TEST_CASE("--help exits 0") {
    REQUIRE(run("--help").exit_code == 0);
    REQUIRE(run("zeta --help").exit_code == 0);
}
