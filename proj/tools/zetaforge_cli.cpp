#include <CLI11.hpp>
#include <json.hpp>

#include <zetaforge/zetaforge.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace zetaforge;
using ordered_json = nlohmann::ordered_json;

namespace {

// results carry numbers as decimal strings; 17 significant digits keep
// the round-trip bit-exact for doubles
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct CommonOpts {
    SeriesParams params;
    bool csv = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tolerance", o.params.tolerance, "target tolerance for series evaluators");
    cmd->add_option("--max-terms", o.params.max_terms, "series cutoff (overrides ZETAFORGE_MAX_TERMS)");
    cmd->add_option("--epsilon", o.params.epsilon_perturb,
                    "offset used when a parameter collides with an integer pole");
    cmd->add_flag("--csv", o.csv, "emit CSV instead of JSON");
    cmd->add_flag_callback("--json", [&o]() { o.csv = false; }, "emit JSON (default)");
}

ordered_json params_echo(const CommonOpts& o) {
    ordered_json in;
    in["tolerance"] = fmt(o.params.tolerance);
    in["max_terms"] = std::to_string(o.params.max_terms);
    in["epsilon"] = fmt(o.params.epsilon_perturb);
    return in;
}

void emit_record(const std::string& command, const ordered_json& inputs,
                 const ordered_json& results, const std::vector<std::string>& flags,
                 long long elapsed_ms, bool csv) {
    if (csv) {
        std::cout << "key,value\n";
        for (const auto& [k, v] : inputs.items())
            std::cout << "input." << k << "," << v.get<std::string>() << "\n";
        for (const auto& [k, v] : results.items())
            std::cout << "result." << k << "," << v.get<std::string>() << "\n";
        std::cout << "flags," << join(flags, ';') << "\n";
        std::cout << "elapsed_ms," << elapsed_ms << "\n";
        return;
    }
    ordered_json j;
    j["schema_version"] = "1.0";
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["flags"] = flags;
    j["elapsed_ms"] = elapsed_ms;
    std::cout << j.dump() << "\n";
}

// Route dispatch shared by `zeta` and `table`. Throws domain_error when
// the route does not apply to (D, s).
ZetaValue compute_route(const Discriminant& D, const complex_t& s, const std::string& route,
                        const SeriesParams& p) {
    if (route == "direct") return dedekind_zeta_direct(D, s, p);
    if (route == "factored") return dedekind_zeta_factored(D, s, p);

    auto integer_s = [&](long long& n) {
        if (s.imag() != 0.0) return false;
        double r = s.real();
        n = std::llround(r);
        return static_cast<double>(n) == r;
    };
    long long n = 0;
    if (route == "closed") {
        if (!integer_s(n)) throw std::domain_error("closed route requires an integer s");
        if (D.real()) {
            if (n < 2 || n % 2 != 0)
                throw std::domain_error("closed route with D > 0 requires even integer s >= 2");
            return dedekind_zeta_even_real_closed(D, static_cast<unsigned>(n / 2));
        }
        if (n < 3 || n % 2 == 0)
            throw std::domain_error("closed route with D < 0 requires odd integer s >= 3");
        return dedekind_zeta_odd_imaginary(D, static_cast<unsigned>(n), p);
    }
    if (route == "zagier") {
        if (D.real()) throw std::domain_error("zagier route requires D < 0");
        if (s != complex_t(2.0, 0.0)) throw std::domain_error("zagier route requires s = 2");
        return zagier_zeta2_imaginary(D, p);
    }
    if (route == "wilton") {
        if (!integer_s(n)) throw std::domain_error("wilton route requires an integer s");
        if (D.real()) {
            if (n < 3 || n % 2 == 0)
                throw std::domain_error("wilton route with D > 0 requires odd integer s >= 3");
            return dedekind_zeta_odd_real_wilton(D, static_cast<unsigned>((n - 1) / 2), p);
        }
        if (n < 4 || n % 2 != 0)
            throw std::domain_error("wilton route with D < 0 requires even integer s >= 4");
        return dedekind_zeta_even_imaginary_wilton(D, static_cast<unsigned>(n / 2), p);
    }
    throw std::domain_error("unknown route: " + route);
}

const std::vector<std::string>& route_names() {
    static const std::vector<std::string> names = {"direct", "factored", "closed", "zagier",
                                                   "wilton"};
    return names;
}

int cmd_field_info(long long d, const CommonOpts& o) {
    Clock clock;
    Discriminant D(d);
    FieldInvariants inv = field_invariants(D);

    ordered_json in;
    in["d"] = std::to_string(d);
    in.update(params_echo(o));

    ordered_json res;
    res["disc"] = std::to_string(inv.disc.value);
    res["signature"] = D.real() ? "(2,0)" : "(0,1)";
    res["w"] = std::to_string(inv.w);
    res["h"] = std::to_string(inv.h);
    res["regulator"] = fmt(inv.reg);
    res["residue"] = fmt(inv.residue);
    std::string vk;
    for (long long m = 1; m <= 20; ++m) {
        if (m > 1) vk += ';';
        vk += std::to_string(ideal_count(D, m));
    }
    res["v_K"] = vk;

    emit_record("field-info", in, res, {}, clock.ms(), o.csv);
    return 0;
}

int cmd_zeta(long long d, const complex_t& s, const std::string& route, bool all_routes,
             const CommonOpts& o) {
    Clock clock;
    Discriminant D(d);

    ordered_json in;
    in["d"] = std::to_string(d);
    in["s_re"] = fmt(s.real());
    in["s_im"] = fmt(s.imag());
    in["route"] = all_routes ? "all" : route;
    in.update(params_echo(o));

    ordered_json res;
    std::vector<std::string> flags;
    if (!all_routes) {
        ZetaValue z = compute_route(D, s, route, o.params);
        res["value_re"] = fmt(z.value.real());
        res["value_im"] = fmt(z.value.imag());
        res["err"] = fmt(z.abs_error_estimate);
        res["terms_used"] = std::to_string(z.terms_used);
        flags = flag_names(z.flags);
    } else {
        std::vector<std::pair<std::string, ZetaValue>> got;
        unsigned all_flags = 0;
        for (const std::string& r : route_names()) {
            try {
                got.emplace_back(r, compute_route(D, s, r, o.params));
                all_flags |= got.back().second.flags;
            } catch (const std::domain_error&) {
                // route not applicable here; skip
            }
        }
        if (got.empty())
            throw std::domain_error("no route is applicable to these arguments");
        for (const auto& [name, z] : got) {
            res[name + "_re"] = fmt(z.value.real());
            res[name + "_im"] = fmt(z.value.imag());
            res[name + "_err"] = fmt(z.abs_error_estimate);
        }
        for (std::size_t i = 0; i < got.size(); ++i)
            for (std::size_t j = i + 1; j < got.size(); ++j)
                res["delta_" + got[i].first + "_" + got[j].first] =
                    fmt(std::abs(got[i].second.value - got[j].second.value));
        flags = flag_names(all_flags);
    }
    emit_record("zeta", in, res, flags, clock.ms(), o.csv);
    return 0;
}

int cmd_verify_wilton(long long d, const complex_t& u, const complex_t& v,
                      const std::vector<std::size_t>& cutoffs, const CommonOpts& o) {
    if (cutoffs.empty()) throw std::invalid_argument("verify-wilton: empty cutoff list");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1])
            throw std::invalid_argument("verify-wilton: cutoffs must be strictly increasing");

    if (o.csv) std::cout << "M,residual,tail_estimate,flags\n";
    for (std::size_t M : cutoffs) {
        Clock clock;
        WiltonReport rep = verify(d, u, v, M, o.params);
        std::vector<std::string> fl = flag_names(rep.flags);
        if (o.csv) {
            std::cout << M << "," << fmt(rep.abs_difference) << "," << fmt(rep.tail_estimate)
                      << "," << join(fl, ';') << "\n";
            continue;
        }
        ordered_json in;
        in["d"] = std::to_string(d);
        in["u_re"] = fmt(u.real());
        in["u_im"] = fmt(u.imag());
        in["v_re"] = fmt(v.real());
        in["v_im"] = fmt(v.imag());
        in["M"] = std::to_string(M);
        in.update(params_echo(o));
        ordered_json res;
        res["lhs_re"] = fmt(rep.lhs.real());
        res["lhs_im"] = fmt(rep.lhs.imag());
        res["rhs_re"] = fmt(rep.rhs.real());
        res["rhs_im"] = fmt(rep.rhs.imag());
        res["residual"] = fmt(rep.abs_difference);
        res["tail_estimate"] = fmt(rep.tail_estimate);
        emit_record("verify-wilton", in, res, fl, clock.ms(), false);
    }
    return 0;
}

int cmd_table(const std::string& spec_path, const std::string& out_path, const CommonOpts& o) {
    std::ifstream in(spec_path);
    if (!in) throw std::invalid_argument("table: cannot open batch file " + spec_path);

    std::ofstream out_file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        out_file.open(out_path);
        if (!out_file) throw std::runtime_error("table: cannot open output file " + out_path);
        os = &out_file;
    }

    *os << "D,s,route,value_re,value_im,err,flags\n";
    bool any_failed = false;
    std::string line;
    while (std::getline(in, line)) {
        std::string row = trim(line);
        if (row.empty() || row[0] == '#' || row == "D,s,route") continue;

        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        while (fields.size() < 3) fields.push_back("");

        std::string err_msg;
        ZetaValue z;
        try {
            if (fields.size() != 3) throw std::invalid_argument("expected D,s,route");
            std::size_t pos = 0;
            long long d = std::stoll(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("bad discriminant");
            double s = std::stod(fields[1], &pos);
            if (pos != fields[1].size()) throw std::invalid_argument("bad s");
            Discriminant D(d);
            z = compute_route(D, complex_t(s, 0.0), fields[2], o.params);
        } catch (const std::exception& e) {
            err_msg = e.what();
            for (char& c : err_msg)
                if (c == ',' || c == '\n') c = ';';
        }

        *os << fields[0] << "," << fields[1] << "," << fields[2] << ",";
        if (err_msg.empty()) {
            *os << fmt(z.value.real()) << "," << fmt(z.value.imag()) << ","
                << fmt(z.abs_error_estimate) << "," << join(flag_names(z.flags), ';') << "\n";
        } else {
            any_failed = true;
            *os << ",,,error:" << err_msg << "\n";
        }
    }
    return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeta and L-values of quadratic fields, with identity verification"};
    app.require_subcommand(1);

    SeriesParams env_defaults;
    if (const char* e = std::getenv("ZETAFORGE_MAX_TERMS")) {
        char* end = nullptr;
        long long v = std::strtoll(e, &end, 10);
        if (end != e && *end == '\0' && v > 0)
            env_defaults.max_terms = static_cast<std::size_t>(v);
    }

    CommonOpts fi_o{env_defaults, false};
    long long fi_d = 0;
    CLI::App* fi = app.add_subcommand("field-info", "invariants of the field of discriminant d");
    fi->add_option("-d,--discriminant", fi_d, "fundamental discriminant")->required();
    add_common(fi, fi_o);

    CommonOpts z_o{env_defaults, false};
    long long z_d = 0;
    double z_s_re = 0.0, z_s_im = 0.0;
    std::string z_route = "factored";
    bool z_all = false;
    CLI::App* zc = app.add_subcommand("zeta", "Dedekind zeta value by a chosen route");
    zc->add_option("-d,--discriminant", z_d, "fundamental discriminant")->required();
    zc->add_option("-s", z_s_re, "evaluation point, real part")->required();
    zc->add_option("--s-imag", z_s_im, "evaluation point, imaginary part");
    zc->add_option("--route", z_route, "direct|factored|closed|zagier|wilton")
        ->check(CLI::IsMember(route_names()));
    zc->add_flag("--all-routes", z_all, "evaluate every applicable route with pairwise deltas");
    add_common(zc, z_o);

    CommonOpts vw_o{env_defaults, false};
    long long vw_d = 0;
    double vw_u = 0.0, vw_ui = 0.0, vw_v = 0.0, vw_vi = 0.0;
    std::vector<std::size_t> vw_M = {100, 400, 1600};
    CLI::App* vw = app.add_subcommand("verify-wilton",
                                      "evaluate both sides of the product identity");
    vw->add_option("-d,--discriminant", vw_d, "fundamental discriminant, or 0 for the rational case")
        ->required();
    vw->add_option("-u", vw_u, "first parameter, real part")->required();
    vw->add_option("-v", vw_v, "second parameter, real part")->required();
    vw->add_option("--u-imag", vw_ui, "first parameter, imaginary part");
    vw->add_option("--v-imag", vw_vi, "second parameter, imaginary part");
    vw->add_option("-M,--cutoffs", vw_M, "strictly increasing truncation points")
        ->delimiter(',');
    add_common(vw, vw_o);

    CommonOpts tb_o{env_defaults, false};
    std::string tb_file, tb_out;
    CLI::App* tb = app.add_subcommand("table", "batch evaluation from a D,s,route file");
    tb->add_option("file", tb_file, "batch file, one D,s,route per line")->required();
    tb->add_option("-o,--output", tb_out, "write the CSV here instead of stdout");
    add_common(tb, tb_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (fi->parsed()) return cmd_field_info(fi_d, fi_o);
        if (zc->parsed())
            return cmd_zeta(z_d, complex_t(z_s_re, z_s_im), z_route, z_all, z_o);
        if (vw->parsed())
            return cmd_verify_wilton(vw_d, complex_t(vw_u, vw_ui), complex_t(vw_v, vw_vi), vw_M,
                                     vw_o);
        if (tb->parsed()) return cmd_table(tb_file, tb_out, tb_o);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
