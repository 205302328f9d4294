#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bott/contract.hpp"
#include "bott/finite.hpp"
#include "bott/homotopy.hpp"
#include "bott/io.hpp"
#include "bott/oracle.hpp"
#include "bott/suites.hpp"

using namespace bott;

namespace {

constexpr int kPass = 0, kFail = 1, kConfig = 2;

struct Common {
    std::uint64_t seed = 42;
    int d = 2;
    int window = 0;
    std::string points = "3";
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* c, Common& o) {
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--d", o.d, "coefficient dimension bound");
    c->add_option("--window", o.window, "window size (0: per-suite default)");
    c->add_option("--points", o.points, "interior grid size, or a list t:s,t:s");
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Rational exact_sqrt(const Rational& x) {
    if (sgn(x) < 0) throw ConfigError("negative square");
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        throw ConfigError("1 - t^2 is not a rational square; the point is not Pythagorean");
    return Rational(sqrt(n), sqrt(d));
}

CirclePoint point_from_t(const std::string& text) {
    Rational t = parse_rational(text);
    return CirclePoint::at(t, exact_sqrt(1 - t * t));
}

// "3" or "3/5:4/5,5/13:12/13"
void parse_points(const std::string& spec, SuiteConfig& cfg) {
    if (spec.find(':') == std::string::npos) {
        try {
            std::size_t used = 0;
            cfg.points = std::stoi(spec, &used);
            if (used != spec.size()) throw ConfigError("bad --points");
        } catch (const std::logic_error&) {
            throw ConfigError("--points must be an integer or a list t:s");
        }
        return;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto c = item.find(':');
        if (c == std::string::npos) throw ConfigError("point must be t:s");
        try {
            cfg.explicit_points.push_back(CirclePoint::at(parse_rational(item.substr(0, c)), parse_rational(item.substr(c + 1))));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("bad point ") + item + ": " + e.what());
        }
    }
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<CirclePoint> grid_of(const Common& o) {
    SuiteConfig cfg;
    parse_points(o.points, cfg);
    std::vector<CirclePoint> r{CirclePoint::at(0, 1)};
    for (const auto& p : interior_points(cfg)) r.push_back(p);
    r.push_back(CirclePoint::at(1, 0));
    return r;
}

// Dense window of an operator, one row per nonzero matrix entry of a v-coefficient.
void window_rows(const Op<Rational>& A, long lo, long hi, const std::string& prefix, std::ostringstream& csv, json& dense) {
    for (long i = lo; i < hi; ++i)
        for (long j = lo; j < hi; ++j) {
            Entry<Rational> e = A.at(i, j);
            if (e.is_zero()) continue;
            dense.push_back(json{{"i", i}, {"j", j}, {"entry", entry_json(e)}});
            for (const auto& [k, c] : e.terms())
                for (int r = 0; r < c.dim(); ++r)
                    for (int s = 0; s < c.dim(); ++s)
                        if (sgn(c(r, s)) != 0)
                            csv << prefix << ',' << i << ',' << j << ',' << k << ',' << r << ',' << s << ',' << to_string(c(r, s)) << '\n';
        }
}

int cmd_verify(const Common& o, const std::string& suite, const std::string& t, int s, const std::string& variant, int instances) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.seed = o.seed;
    cfg.d = o.d;
    cfg.window = o.window;
    cfg.s = s;
    cfg.instances = instances;
    cfg.variant = variant == "poly" ? RotVariant::Poly : RotVariant::Unitary;
    parse_points(o.points, cfg);
    if (!t.empty()) cfg.explicit_points = {point_from_t(t)};
    validate(cfg);
    Report R = run_suite(cfg);
    emit(o, o.format == "csv" ? report_csv(R) : dump(report_json(R, config_json(cfg))));
    return R.all_pass() ? kPass : kFail;
}

int cmd_linearize(const Common& o, const std::string& input) {
    LoopUnit a = unit_from_json(read_json(input));
    int d = a.dim();
    int w = o.window > 0 ? o.window : 8;
    Op<Rational> B = bott_involution(a);
    Op<Rational> K0 = linearize_k(a, param(CirclePoint::at(0, 1))), K1 = linearize_k(a, param(CirclePoint::at(1, 0)));
    Report R;
    R.add("linearize", "K(a,0,v) = Lambda(v,Q)^-1 Lambda(v,B(a))", "input", K0 == k_start<Rational>(a));
    R.add("linearize", "K(a,pi/2,v) = E_Z(a(v) a(1)^-1)", "input", K1 == k_end<Rational>(a));
    R.add("linearize", "B(a)^2 = 1", "input", B * B == Op<Rational>::identity(d));
    json frames = json::array();
    std::ostringstream csv;
    csv << "t,s,i,j,v,row,col,value\n";
    for (const auto& p : grid_of(o)) {
        Op<Rational> K = linearize_k(a, param(p));
        R.add("linearize", "K(a,theta,1) = 1", p.str(), K.subst_v(1) == Op<Rational>::identity(d));
        json dense = json::array();
        window_rows(K, -w, w, to_string(p.t) + "," + to_string(p.s), csv, dense);
        frames.push_back(json{{"t", rational_json(p.t)}, {"s", rational_json(p.s)}, {"K", op_json(K)}});
    }
    sort_rows(R);
    if (o.format == "csv") {
        emit(o, csv.str());
    } else {
        json out{{"loop", loop_json(a.forward)},
                 {"B", op_json(B)},
                 {"K_start", op_json(K0)},
                 {"K_end", op_json(K1)},
                 {"trace", frames},
                 {"checks", report_json(R, json::object())["rows"]}};
        emit(o, dump(out));
    }
    return R.all_pass() ? kPass : kFail;
}

int cmd_finite(const Common& o, const std::string& input, const std::string& hs) {
    LoopDecomposition dec = decomposition_from_json(read_json(input));
    FiniteOptions opt;
    opt.hs.clear();
    std::stringstream ss(hs);
    std::string item;
    while (std::getline(ss, item, ',')) opt.hs.push_back(parse_rational(item));
    if (opt.hs.empty()) throw ConfigError("--hs needs at least one value");
    Report R = finite_static_checks(dec, opt);
    for (const auto& p : grid_of(o)) R.append(finite_checks(dec, p, opt));
    sort_rows(R);
    if (o.format == "csv") {
        emit(o, report_csv(R));
    } else {
        int s = dec.size();
        json out{{"B_F", op_json(b_f(dec))},
                 {"box", {{"M", dec.cls.M(s)}, {"N", dec.cls.N(s)}}},
                 {"checks", report_json(R, json::object())["rows"]}};
        emit(o, dump(out));
    }
    return R.all_pass() ? kPass : kFail;
}

// Frames of U(a,theta,v), K(a,theta,v) or T(A,theta) at the grid points, as dense windows.
int cmd_trace(const Common& o, const std::string& input, const std::string& which) {
    json in = read_json(input);
    int w = o.window > 0 ? o.window : 8;
    json frames = json::array();
    std::ostringstream csv;
    csv << "t,s,i,j,v,row,col,value\n";
    for (const auto& p : grid_of(o)) {
        Op<Rational> X;
        if (which == "toeplitz") {
            Op<Rational> A = op_from_json(in);
            if (!A.on_N()) throw ConfigError("toeplitz trace needs an operator on N");
            X = toeplitz_homotopy(A, param(p));
        } else {
            LoopUnit a = unit_from_json(in);
            X = which == "U" ? linearize_u(a.forward, param(p)) : linearize_k(a, param(p));
        }
        json dense = json::array();
        window_rows(X, which == "toeplitz" ? 0 : -w, w, to_string(p.t) + "," + to_string(p.s), csv, dense);
        frames.push_back(json{{"t", rational_json(p.t)}, {"s", rational_json(p.s)}, {"window", dense}});
    }
    emit(o, o.format == "csv" ? csv.str() : dump(json{{"homotopy", which}, {"frames", frames}}));
    return kPass;
}

int cmd_bench(const Common& o, int reps) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    json rows = json::array();
    bool all_equal = true;
    for (int n : {32, 64, 128, 256}) {
        std::vector<double> a(n * n), b(n * n), c1(n * n), c2(n * n);
        for (auto& x : a) x = U(rng);
        for (auto& x : b) x = U(rng);
        auto time = [&](auto&& f, std::vector<double>& c) {
            auto t0 = std::chrono::steady_clock::now();
            for (int r = 0; r < reps; ++r) f(a.data(), b.data(), c.data(), n);
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
        };
        double ts = time(f64::matmul_scalar, c1);
        double td = time(f64::matmul, c2);
        bool eq = c1 == c2;
        all_equal = all_equal && eq;
        rows.push_back(json{{"n", n}, {"scalar_ms", ts}, {"dispatched_ms", td}, {"bitwise_equal", eq}});
    }
    json out{{"kernel", f64::kernel_name(f64::selected_kernel())}, {"avx2_available", f64::avx2_available()},
             {"reps", reps}, {"results", rows}};
    if (o.format == "csv") {
        std::ostringstream os;
        os << "n,scalar_ms,dispatched_ms,bitwise_equal\n";
        for (const auto& r : rows) os << r["n"] << ',' << r["scalar_ms"] << ',' << r["dispatched_ms"] << ',' << r["bitwise_equal"] << '\n';
        emit(o, os.str());
    } else {
        emit(o, dump(out));
    }
    return all_equal ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for loop linearization and Bott periodicity constructions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "optional config file, overridden by flags");

    Common vo, lo, fo, to, bo;
    std::string suite = "all", t, variant = "unitary";
    int s = 3, instances = 20;
    auto* verify = app.add_subcommand("verify", "run verification suites and print a report");
    add_common(verify, vo);
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_ids()));
    verify->add_option("--t", t, "single rational point t (s from t^2 + s^2 = 1)");
    verify->add_option("--s", s, "decomposition length bound");
    verify->add_option("--variant", variant)->check(CLI::IsMember({"unitary", "poly"}));
    verify->add_option("--instances", instances, "randomized instances per check");

    std::string input;
    auto* lin = app.add_subcommand("linearize", "B(a), K endpoints and a K trace for a builder unit");
    add_common(lin, lo);
    lin->add_option("--input", input, "unit JSON")->required();

    std::string finput, hs = "0,1/2,1";
    auto* fin = app.add_subcommand("finite-linearize", "B_F, its box and the K_F checks for a decomposition");
    add_common(fin, fo);
    fin->add_option("--input", finput, "decomposition JSON")->required();
    fin->add_option("--hs", hs, "comma-separated h values");

    std::string tinput, which = "K";
    auto* trace = app.add_subcommand("trace", "dense frames of a homotopy at grid points");
    add_common(trace, to);
    trace->add_option("--input", tinput, "unit JSON, or operator JSON for toeplitz")->required();
    trace->add_option("--homotopy", which)->check(CLI::IsMember({"K", "U", "toeplitz"}));

    int reps = 5;
    auto* bench = app.add_subcommand("bench", "float dense-product kernels");
    add_common(bench, bo);
    bench->add_option("--reps", reps)->check(CLI::Range(1, 1000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*verify) return cmd_verify(vo, suite, t, s, variant, instances);
        if (*lin) return cmd_linearize(lo, input);
        if (*fin) return cmd_finite(fo, finput, hs);
        if (*trace) return cmd_trace(to, tinput, which);
        if (*bench) return cmd_bench(bo, reps);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kConfig;
    } catch (const NotBuilderUnit& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kConfig;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kFail;
    }
    return kConfig;
}
