#include "bott/io.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace bott {

json rational_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("expected a rational string");
    return parse_rational(j.get<std::string>());
}

json circle_json(const CircleScalar& x) { return json{{"value", x.str()}}; }

json mat_json(const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(rational_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

QMat mat_from_json(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) throw ParseError("matrix must have d rows");
    QMat m = QMat::zero(d);
    for (int r = 0; r < d; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != d) throw ParseError("matrix row must have d entries");
        for (int c = 0; c < d; ++c) m(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

namespace {

int dim_of(const json& j) {
    if (!j.contains("d") || !j["d"].is_number_integer()) throw ParseError("missing integer field d");
    int d = j["d"].get<int>();
    if (d < 1 || d > 64) throw ParseError("d out of range");
    return d;
}

json terms_json(const Laurent<QMat>& a, const char* key) {
    json t = json::array();
    for (const auto& [k, c] : a.terms()) t.push_back(json{{key, k}, {"coeff", mat_json(c)}});
    return t;
}

Laurent<QMat> terms_from_json(const json& j, int d, const char* key) {
    if (!j.is_array()) throw ParseError("terms must be an array");
    Laurent<QMat> r;
    for (const auto& t : j) r.add(t.at(key).get<int>(), mat_from_json(t.at("coeff"), d));
    return r;
}

json sym_json(const Sym<Rational>& s) {
    json t = json::array();
    for (const auto& [k, e] : s.terms()) t.push_back(json{{"exp", k}, {"entry", entry_json(e)}});
    return t;
}

Sym<Rational> sym_from_json(const json& j, int d) {
    Sym<Rational> s;
    if (!j.is_array()) throw ParseError("symbol must be an array");
    for (const auto& t : j) s.add(t.at("exp").get<int>(), entry_from_json(t.at("entry"), d));
    return s;
}

const char* kind_name(Generator::Kind k) {
    switch (k) {
        case Generator::Constant: return "constant";
        case Generator::Monomial: return "monomial";
        case Generator::Mixer: return "mixer";
        case Generator::Unipotent: return "unipotent";
    }
    return "?";
}

Generator generator_from_json(const json& j, int d) {
    Generator g;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        g.kind = Generator::Constant;
        g.c = mat_from_json(j.at("c"), d);
    } else if (kind == "monomial") {
        g.kind = Generator::Monomial;
        g.c = j.contains("c") ? mat_from_json(j["c"], d) : QMat::identity(d);
        g.k = j.value("k", 1);
    } else if (kind == "mixer") {
        g.kind = Generator::Mixer;
        g.c = mat_from_json(j.at("c"), d);
        g.k = j.value("sign", 1);
    } else if (kind == "unipotent") {
        g.kind = Generator::Unipotent;
        g.n = loop_from_json(j.at("n"));
        g.witness = j.at("witness").get<int>();
    } else {
        throw ParseError("unknown generator kind " + kind);
    }
    return g;
}

}  // namespace

json loop_json(const CyclicLoop& a) { return json{{"d", a.dim()}, {"terms", terms_json(a.terms(), "exp")}}; }

CyclicLoop loop_from_json(const json& j) {
    int d = dim_of(j);
    return CyclicLoop(d, terms_from_json(j.at("terms"), d, "exp"));
}

json entry_json(const Entry<Rational>& e) { return terms_json(e, "v"); }

Entry<Rational> entry_from_json(const json& j, int d) { return terms_from_json(j, d, "v"); }

json op_json(const Op<Rational>& A) {
    json fin = json::array();
    for (const auto& [ij, e] : A.fin) fin.push_back(json{{"i", ij.first}, {"j", ij.second}, {"entry", entry_json(e)}});
    return json{{"d", A.d}, {"laurent", {{"neg", sym_json(A.neg)}, {"pos", sym_json(A.pos)}}}, {"finite", fin}};
}

Op<Rational> op_from_json(const json& j) {
    int d = dim_of(j);
    Op<Rational> A(d);
    if (j.contains("laurent")) {
        A.neg = sym_from_json(j["laurent"].at("neg"), d);
        A.pos = sym_from_json(j["laurent"].at("pos"), d);
    }
    if (j.contains("finite"))
        for (const auto& f : j["finite"]) fin_add(A.fin, {f.at("i").get<long>(), f.at("j").get<long>()}, entry_from_json(f.at("entry"), d));
    return A;
}

json generator_json(const Generator& g) {
    json j{{"kind", kind_name(g.kind)}};
    switch (g.kind) {
        case Generator::Constant: j["c"] = mat_json(g.c); break;
        case Generator::Monomial:
            j["c"] = mat_json(g.c);
            j["k"] = g.k;
            break;
        case Generator::Mixer:
            j["c"] = mat_json(g.c);
            j["sign"] = g.k;
            break;
        case Generator::Unipotent:
            j["n"] = loop_json(g.n);
            j["witness"] = g.witness;
            break;
    }
    return j;
}

json unit_json(int d, const std::vector<Generator>& gens) {
    json g = json::array();
    for (const auto& x : gens) g.push_back(generator_json(x));
    return json{{"d", d}, {"generators", g}};
}

LoopUnit unit_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("unit must be an object");
    int d = dim_of(j);
    if (!j.contains("generators") || !j["generators"].is_array())
        throw NotBuilderUnit("a unit needs its builder generators; a bare loop has no certified inverse");
    std::vector<Generator> gens;
    for (const auto& g : j["generators"]) gens.push_back(generator_from_json(g, d));
    return unit_builder(d, gens);
}

LoopDecomposition decomposition_from_json(const json& j) {
    int d = dim_of(j);
    if (!j.contains("factors") || !j["factors"].is_array()) throw ParseError("missing factors array");
    std::vector<LoopUnit> fs;
    std::vector<std::optional<ClassWindow>> ws;
    for (const auto& f : j["factors"]) {
        json u = f;
        u["d"] = d;
        fs.push_back(unit_from_json(u));
        if (f.contains("window")) {
            const json& w = f["window"];
            std::string tag = w.value("tag", std::string("L"));
            if (tag != "L" && tag != "R") throw ParseError("window tag must be L or R");
            ws.push_back(ClassWindow{w.at("m").get<int>(), w.at("n").get<int>(), tag[0]});
        } else {
            ws.push_back(std::nullopt);
        }
    }
    LoopDecomposition dec = make_decomposition(fs);
    for (std::size_t k = 0; k < ws.size(); ++k)
        if (ws[k]) dec.cls.windows[k] = *ws[k];
    std::string why;
    if (!dec.windows_ok(&why)) throw ParseError("decomposition windows: " + why);
    return dec;
}

void sort_rows(Report& r) {
    std::stable_sort(r.rows.begin(), r.rows.end(), [](const CheckRow& a, const CheckRow& b) {
        if (a.anchor != b.anchor) return a.anchor < b.anchor;
        if (a.instance != b.instance) return a.instance < b.instance;
        return a.suite < b.suite;
    });
}

json report_json(const Report& r, const json& config) {
    json rows = json::array();
    for (const auto& x : r.rows) {
        json row{{"suite", x.suite}, {"anchor", x.anchor}, {"instance", x.instance}, {"pass", x.pass}};
        if (!x.detail.empty()) row["detail"] = x.detail;
        rows.push_back(row);
    }
    return json{{"config", config},
                {"summary", {{"rows", r.rows.size()}, {"failures", r.failures()}, {"pass", r.all_pass()}}},
                {"rows", rows}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string report_csv(const Report& r) {
    std::ostringstream os;
    os << "suite,anchor,instance,pass,detail\n";
    for (const auto& x : r.rows)
        os << csv_field(x.suite) << ',' << csv_field(x.anchor) << ',' << csv_field(x.instance) << ','
           << (x.pass ? "PASS" : "FAIL") << ',' << csv_field(x.detail) << '\n';
    return os.str();
}

}  // namespace bott
