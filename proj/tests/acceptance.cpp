// One PASS/FAIL line per acceptance criterion. Exit 0 iff every criterion passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "bott/suites.hpp"

using namespace bott;

namespace {

struct Line {
    bool pass = true;
    std::string note;
};

Report only(const Report& R, const std::function<bool(const CheckRow&)>& keep) {
    Report r;
    for (const auto& row : R.rows)
        if (keep(row)) r.rows.push_back(row);
    return r;
}

std::size_t count(const Report& R, const std::string& anchor_prefix) {
    std::size_t n = 0;
    for (const auto& row : R.rows) n += row.anchor.rfind(anchor_prefix, 0) == 0 ? 1 : 0;
    return n;
}

// All rows pass, there are rows, and every named anchor has at least min rows.
Line judge(const Report& R, const std::vector<std::pair<std::string, std::size_t>>& needs) {
    Line l;
    l.pass = !R.rows.empty() && R.all_pass();
    std::size_t fails = R.failures();
    l.note = std::to_string(R.rows.size()) + " checks";
    if (fails) {
        for (const auto& row : R.rows)
            if (!row.pass) {
                l.note += "; first failure: " + row.anchor + " [" + row.instance + "] " + row.detail;
                break;
            }
    }
    for (const auto& [a, n] : needs) {
        std::size_t c = count(R, a);
        if (c < n) {
            l.pass = false;
            l.note += "; only " + std::to_string(c) + " rows for '" + a + "'";
        }
    }
    return l;
}

void print(int k, const char* what, const Line& l) { std::printf("%s %2d  %s (%s)\n", l.pass ? "PASS" : "FAIL", k, what, l.note.c_str()); }

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    SuiteConfig cfg;
    cfg.seed = 42;
    cfg.d = 3;
    cfg.points = 3;
    cfg.s = 3;
    cfg.instances = 20;

    Report all = run_suite(cfg);
    std::string bytes = report_json(all, config_json(cfg)).dump();
    auto in = [&](const std::string& suite) { return only(all, [&](const CheckRow& r) { return r.suite == suite; }); };
    const std::size_t N = static_cast<std::size_t>(cfg.instances);
    int failed = 0;
    auto line = [&](int k, const char* what, const Line& l) {
        print(k, what, l);
        failed += l.pass ? 0 : 1;
    };

    Report art = in("artkey");
    line(1, "rotation identities: symbolic, endpoints, interior tail forms, matrix units and shifts",
         judge(art, {{"rotation left inverse", 2 + 3 + 1}, {"rotation right product", 6}, {"conjugated matrix unit", 6}, {"conjugated shift", 6}}));

    line(2, "stabilizing conjugation: endpoints, endomorphism, recovery",
         judge(in("stabilize"), {{"T_K at t=0", N}, {"T_K at t=1", N}, {"T_K is an endomorphism", N}, {"recovery", 1}}));

    line(3, "Bott involution calculus",
         judge(in("bott"), {{"B(a)^2 = 1", N}, {"B(ac) = B(a)", N}, {"bott_invert(B(a)) = a a(1)^-1", N}, {"B(Lambda(z,Qt))", N}}));

    Report lin = only(in("linearize"), [](const CheckRow& r) { return r.anchor.rfind("unitarity", 0) != 0; });
    line(4, "linearization: multiplicativity, endpoints, pi/2 display, constant K for mixers",
         judge(lin, {{"U(ab,theta,v)", N}, {"U(a,0,v) = U(a)", N}, {"U(a,pi/2,v) matches", N}, {"K(a,0,v)", N},
                     {"K(a,pi/2,v)", N}, {"K(Lambda(z,Qt)", N}}));

    line(5, "Toeplitz calculus: dense product rule, sigma, T endpoints, Z endpoints",
         judge(in("toeplitz"), {{"anomalous product rule", N}, {"sigma is multiplicative", N}, {"T(A,pi/2)", N},
                                {"T(A,-pi/2)", N}, {"Z(A,0) = 1", N}, {"Z(A,pi/2)", N}, {"Z(A,-pi/2)", N}}));

    line(6, "contraction chain: steps (b), (c) and the section symbol on nested windows",
         judge(in("contract"), {{"section product agrees on nested windows", 10}, {"section symbol", 10},
                                {"step (b) symbol at 0", 1}, {"step (b) symbol at pi/2", 1}, {"step (c) at 0", 1}, {"step (c) at pi/2", 1}}));

    Report fin = in("finite");
    line(7, "finite linearization: reduction lemma, stripe classes, K_F and B_F checks, box bound",
         judge(fin, {{"random decompositions with nontrivial reduction", 1}, {"B_F is an (M_s,N_s)-perturbation of Q", 10},
                     {"interpolation inverse", 10 * 3}, {"tower stripe classes hold", 10}, {"K_F at h=0", 10}, {"K_F at h=1", 10}}));

    Report unit = only(all, [](const CheckRow& r) {
        return r.anchor.rfind("unitarity", 0) == 0 || r.anchor.rfind("T_K respects adjoints", 0) == 0 ||
               (r.suite == "artkey" && r.anchor.rfind("rotation left inverse", 0) == 0);
    });
    line(8, "unitarity of the constructed units", judge(unit, {{"unitarity: U(a,theta,v)", N}, {"unitarity: B(a)", N}, {"T_K respects adjoints", N}}));

    SuiteConfig pc = cfg;
    pc.variant = RotVariant::Poly;
    Report poly;
    poly.append(suite_artkey(pc));
    poly.append(suite_stabilize(pc));
    poly.append(suite_bott(pc));
    poly.append(suite_linearize(pc));
    line(9, "polynomial variant reproduces criteria 1-4 on -1 < t < 1",
         judge(poly, {{"rotation left inverse", 4}, {"T_K is an endomorphism", N}, {"B(a)^2 = 1", N}, {"U(ab,theta,v)", N},
                      {"poly variant entries are polynomials in t", 1}}));

    Report again = run_suite(cfg);
    Line l10 = judge(in("oracle-equiv"), {{"operator product agrees", N}, {"K endpoints for an L-only factor within 2^-20", N},
                                         {"K(a,theta,v) agrees with the dense product", N}});
    bool same = report_json(again, config_json(cfg)).dump() == bytes;
    l10.pass = l10.pass && same;
    l10.note += same ? "; repeated report byte-identical" : "; repeated report differs";
    line(10, "dense oracle equivalence and deterministic reports", l10);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 10 criteria failed; %zu checks; %.1f s\n", failed, all.rows.size() + poly.rows.size(), secs);
    return failed ? 1 : 0;
}
