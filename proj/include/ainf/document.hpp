#pragma once

// Versioned JSON input documents (schema version 1). Ring elements are strings in the
// term grammar of parse_series; rationals are fraction strings.

#include "builders.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ainf {

using Json = nlohmann::ordered_json;

struct Cutoffs {
    Rational emax{3};
    int kmax = 6;
    int lmax = 4;
    std::optional<int> nmax;  // empty: automatic from the valuation of b
    int depth = 0;
};

struct TowerSpec {
    std::string form = "table";  // table | coboundary | connecting
    std::vector<std::map<Word, RingElement>> levels;
};

struct Candidate {
    std::string name;
    Element<RingElement> b;
};

struct Document {
    int version = 1;
    std::string kind = "algebra";  // algebra | wallcross_pair
    std::string source;            // file path, for reports
    Cutoffs cut;
    std::unique_ptr<Algebra> algebra;
    std::optional<TowerSpec> tower;
    std::vector<Candidate> candidates;
    Homotopy homotopy;
    std::optional<Element<RingElement>> mc_seed;
    std::optional<Element<PathRingElement>> path;
    RingElement m_minus_one;
    std::optional<RingElement> gw;
    std::unique_ptr<Document> minus, plus;  // wallcross_pair only
};

// command-line overrides of the document cutoffs
struct Overrides {
    std::optional<Rational> emax;
    std::optional<int> kmax, lmax, nmax;
};

class DocumentError : public std::runtime_error {
public:
    DocumentError(const std::string& where, const std::string& msg) : std::runtime_error(where + ": " + msg), where_(where), msg_(msg) {}
    const std::string& where() const { return where_; }
    const std::string& message() const { return msg_; }

private:
    std::string where_, msg_;
};

namespace detail {

inline const Json& need(const Json& j, const char* key, const std::string& at) {
    if (!j.is_object()) throw DocumentError(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw DocumentError(at, std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::string need_string(const Json& j, const std::string& at) {
    if (!j.is_string()) throw DocumentError(at, "expected a string");
    return j.get<std::string>();
}

inline int need_int(const Json& j, const std::string& at) {
    if (!j.is_number_integer()) throw DocumentError(at, "expected an integer");
    return j.get<int>();
}

inline Rational need_fraction(const Json& j, const std::string& at) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    std::string s = need_string(j, at);
    try {
        return parse_rational(s);
    } catch (const ParseError& e) {
        throw DocumentError(at, std::string(e.what()) + " in \"" + s + "\"");
    }
}

template <class K>
Series<K> need_series(const Json& j, const Rational& emax, const std::string& at) {
    if (j.is_number_integer()) return Series<K>::constant(K(Rational(j.get<long>())), emax);
    std::string s = need_string(j, at);
    try {
        return parse_series<K>(s, emax);
    } catch (const ParseError& e) {
        throw DocumentError(at, std::string(e.what()) + " at offset " + std::to_string(e.pos) + " in \"" + s + "\"");
    }
}

inline int basis_index(const Basis& B, const std::string& name, const std::string& at) {
    int i = B.find(name);
    if (i < 0) throw DocumentError(at, "unknown basis element \"" + name + "\"");
    return i;
}

template <class K>
Element<Series<K>> need_element(const Json& j, const Basis& B, const Rational& emax, const std::string& at) {
    if (!j.is_object()) throw DocumentError(at, "expected an object {basis name: coefficient}");
    Element<Series<K>> x;
    for (const auto& [k, v] : j.items()) add_term(x, basis_index(B, k, at), need_series<K>(v, emax, at + "/" + k));
    return x;
}

// "v | a1 a2": module slot, bar, tensor slots separated by blanks
inline Word parse_word(const Basis& B, const std::string& text, const std::string& at) {
    auto bar = text.find('|');
    if (bar == std::string::npos) throw DocumentError(at, "chain word \"" + text + "\" needs the form \"v | a1 a2 ...\"");
    std::istringstream head(text.substr(0, bar)), tail(text.substr(bar + 1));
    std::string tok;
    Word w;
    while (head >> tok) w.push_back(basis_index(B, tok, at));
    if (w.size() != 1) throw DocumentError(at, "chain word \"" + text + "\" must have exactly one module slot");
    while (tail >> tok) w.push_back(basis_index(B, tok, at));
    return w;
}

inline std::string format_word(const Basis& B, const Word& w) {
    std::string s = B.names[static_cast<std::size_t>(w[0])] + " |";
    for (std::size_t i = 1; i < w.size(); ++i) s += " " + B.names[static_cast<std::size_t>(w[i])];
    return s;
}

inline std::map<Word, RingElement> need_level(const Json& j, const Basis& B, const Rational& emax, const std::string& at) {
    if (!j.is_object()) throw DocumentError(at, "expected an object {\"v | a1 ..\": value}");
    std::map<Word, RingElement> t;
    for (const auto& [k, v] : j.items()) {
        Word w = parse_word(B, k, at);
        if (t.count(w)) throw DocumentError(at, "duplicate chain word \"" + k + "\"");
        t.emplace(w, need_series<Rational>(v, emax, at + "/" + k));
    }
    return t;
}

inline void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& at) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw DocumentError(at, "unknown field \"" + k + "\"");
    }
}

inline std::unique_ptr<Document> load_json(const Json& j, const Overrides& ov, const std::string& at);

inline std::unique_ptr<Algebra> load_algebra(const Json& j, const Rational& emax, const std::string& at) {
    auto A = std::make_unique<Algebra>();
    A->name = j.contains("name") ? need_string(j["name"], at + "/name") : "unnamed";
    A->emax = emax;
    if (j.contains("variables")) {
        const Json& v = j["variables"];
        check_keys(v, {"s", "t"}, at + "/variables");
        if (v.contains("s")) A->vars.deg_s = need_int(v["s"], at + "/variables/s");
        if (v.contains("t")) {
            if (!v["t"].is_array()) throw DocumentError(at + "/variables/t", "expected a list of degrees");
            for (std::size_t i = 0; i < v["t"].size(); ++i)
                A->vars.deg_t.push_back(need_int(v["t"][i], at + "/variables/t/" + std::to_string(i)));
        }
    }
    try {
        A->vars.validate();
    } catch (const ConfigError& e) {
        throw DocumentError(at + "/variables", e.what());
    }
    const Json& basis = need(j, "basis", at);
    if (!basis.is_array() || basis.empty()) throw DocumentError(at + "/basis", "expected a nonempty list");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::string p = at + "/basis/" + std::to_string(i);
        std::string name = need_string(need(basis[i], "name", p), p + "/name");
        if (name.empty() || name.find_first_of(" |") != std::string::npos) throw DocumentError(p, "basis names must be nonempty without blanks or '|'");
        if (A->basis.find(name) >= 0) throw DocumentError(p, "duplicate basis element \"" + name + "\"");
        A->basis.add(name, need_int(need(basis[i], "degree", p), p + "/degree"));
    }
    if (j.contains("unit")) {
        int u = basis_index(A->basis, need_string(j["unit"], at + "/unit"), at + "/unit");
        if (A->basis.deg[static_cast<std::size_t>(u)] != 0) throw DocumentError(at + "/unit", "the unit must have degree 0");
        A->basis.set_unit(u);
    }
    const Json& monoid = need(j, "monoid", at);
    if (!monoid.is_array() || monoid.empty()) throw DocumentError(at + "/monoid", "expected a nonempty list starting with the neutral element");
    A->monoid.clear();
    for (std::size_t i = 0; i < monoid.size(); ++i) {
        std::string p = at + "/monoid/" + std::to_string(i);
        A->monoid.push_back({need_fraction(need(monoid[i], "lambda", p), p + "/lambda"), need_int(need(monoid[i], "mu", p), p + "/mu")});
    }
    if (sgn(A->monoid[0].lambda) != 0 || A->monoid[0].mu != 0) throw DocumentError(at + "/monoid/0", "the first monoid element must be (0, 0)");
    const Json& ops = need(j, "operations", at);
    A->complete = need(ops, "complete", at + "/operations").get<bool>();
    A->table_arity = ops.contains("table_arity") ? need_int(ops["table_arity"], at + "/operations/table_arity") : 0;
    const Json& entries = need(ops, "entries", at + "/operations");
    if (!entries.is_array()) throw DocumentError(at + "/operations/entries", "expected a list");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string p = at + "/operations/entries/" + std::to_string(i);
        const Json& e = entries[i];
        check_keys(e, {"beta", "inputs", "output"}, p);
        OpEntry en;
        en.beta = need_int(need(e, "beta", p), p + "/beta");
        const Json& in = need(e, "inputs", p);
        if (!in.is_array()) throw DocumentError(p + "/inputs", "expected a list of basis names");
        for (const auto& x : in) en.inputs.push_back(basis_index(A->basis, need_string(x, p + "/inputs"), p + "/inputs"));
        en.output = need_element<Rational>(need(e, "output", p), A->basis, emax, p + "/output");
        A->entries.push_back(std::move(en));
    }
    try {
        A->finalize();
    } catch (const ConfigError& e) {
        throw DocumentError(at + "/operations", e.what());
    }
    return A;
}

inline std::unique_ptr<Document> load_json(const Json& j, const Overrides& ov, const std::string& at) {
    if (!j.is_object()) throw DocumentError(at, "expected an object");
    auto doc = std::make_unique<Document>();
    const Json& ver = need(j, "version", at);
    if (!ver.is_number_integer() || ver.get<int>() != 1) throw DocumentError(at + "/version", "unsupported schema version (this reader handles 1)");
    std::string field = need_string(need(j, "field", at), at + "/field");
    if (field != "rational") throw DocumentError(at + "/field", "unsupported ground field \"" + field + "\" (version 1 supports \"rational\")");
    doc->kind = j.contains("kind") ? need_string(j["kind"], at + "/kind") : "algebra";

    // cutoffs first: every ring element is read with E_max
    if (j.contains("cutoffs")) {
        const Json& c = j["cutoffs"];
        std::string p = at + "/cutoffs";
        check_keys(c, {"emax", "kmax", "lmax", "nmax", "depth"}, p);
        if (c.contains("emax")) doc->cut.emax = need_fraction(c["emax"], p + "/emax");
        if (c.contains("kmax")) doc->cut.kmax = need_int(c["kmax"], p + "/kmax");
        if (c.contains("lmax")) doc->cut.lmax = need_int(c["lmax"], p + "/lmax");
        if (c.contains("nmax")) {
            if (c["nmax"].is_string() && c["nmax"].get<std::string>() == "auto")
                doc->cut.nmax.reset();
            else
                doc->cut.nmax = need_int(c["nmax"], p + "/nmax");
        }
        if (c.contains("depth")) doc->cut.depth = need_int(c["depth"], p + "/depth");
    }
    if (ov.emax) doc->cut.emax = *ov.emax;
    if (ov.kmax) doc->cut.kmax = *ov.kmax;
    if (ov.lmax) doc->cut.lmax = *ov.lmax;
    if (ov.nmax) doc->cut.nmax = *ov.nmax;
    if (sgn(doc->cut.emax) < 0) throw DocumentError(at + "/cutoffs/emax", "E_max must be nonnegative");
    if (doc->cut.kmax < 0 || doc->cut.lmax < 1) throw DocumentError(at + "/cutoffs", "K_max must be >= 0 and L_max >= 1");
    Rational E = doc->cut.emax;

    if (doc->kind == "wallcross_pair") {
        check_keys(j, {"version", "field", "kind", "name", "cutoffs", "gw", "minus", "plus"}, at);
        doc->gw = need_series<Rational>(need(j, "gw", at), E, at + "/gw");
        Overrides inner = ov;
        inner.emax = E;
        if (doc->cut.nmax) inner.nmax = doc->cut.nmax;
        inner.kmax = doc->cut.kmax;
        inner.lmax = doc->cut.lmax;
        doc->minus = load_json(need(j, "minus", at), inner, at + "/minus");
        doc->plus = load_json(need(j, "plus", at), inner, at + "/plus");
        return doc;
    }
    if (doc->kind != "algebra") throw DocumentError(at + "/kind", "unknown document kind \"" + doc->kind + "\"");
    check_keys(j, {"version", "field", "kind", "name", "cutoffs", "variables", "basis", "unit", "monoid", "operations", "tower",
                   "candidates", "homotopy", "mc_seed", "path", "m_minus_one", "gw"},
               at);
    doc->algebra = load_algebra(j, E, at);
    const Algebra& A = *doc->algebra;
    const Basis& B = A.basis;
    if (j.contains("tower")) {
        const Json& t = j["tower"];
        std::string p = at + "/tower";
        check_keys(t, {"form", "levels"}, p);
        TowerSpec ts;
        ts.form = need_string(need(t, "form", p), p + "/form");
        if (ts.form != "table" && ts.form != "coboundary" && ts.form != "connecting")
            throw DocumentError(p + "/form", "unknown tower form \"" + ts.form + "\" (table, coboundary, connecting)");
        const Json& lv = need(t, "levels", p);
        if (!lv.is_array()) throw DocumentError(p + "/levels", "expected a list of levels");
        for (std::size_t i = 0; i < lv.size(); ++i) ts.levels.push_back(need_level(lv[i], B, E, p + "/levels/" + std::to_string(i)));
        if (ts.form == "table")
            for (std::size_t i = 0; i < ts.levels.size(); ++i)
                for (const auto& [w, c] : ts.levels[i])
                    if (has_unit_slot(A, w))
                        throw DocumentError(p + "/levels/" + std::to_string(i),
                                            "entry \"" + format_word(B, w) + "\" has the unit in a tensor slot (chains are reduced)");
        doc->tower = std::move(ts);
        if (!j.contains("cutoffs") || !j["cutoffs"].contains("depth")) doc->cut.depth = std::max(0, static_cast<int>(doc->tower->levels.size()) - 1);
    }
    if (j.contains("candidates")) {
        const Json& c = j["candidates"];
        if (!c.is_array()) throw DocumentError(at + "/candidates", "expected a list");
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::string p = at + "/candidates/" + std::to_string(i);
            Candidate cd;
            cd.name = c[i].contains("name") ? need_string(c[i]["name"], p + "/name") : "b" + std::to_string(i);
            cd.b = need_element<Rational>(need(c[i], "b", p), B, E, p + "/b");
            doc->candidates.push_back(std::move(cd));
        }
    }
    if (j.contains("homotopy")) {
        const Json& h = j["homotopy"];
        if (!h.is_object()) throw DocumentError(at + "/homotopy", "expected an object {basis name: element}");
        for (const auto& [k, v] : h.items())
            doc->homotopy[basis_index(B, k, at + "/homotopy")] = need_element<Rational>(v, B, E, at + "/homotopy/" + k);
    }
    if (j.contains("mc_seed")) doc->mc_seed = need_element<Rational>(j["mc_seed"], B, E, at + "/mc_seed");
    if (j.contains("path")) doc->path = need_element<Poly>(j["path"], B, E, at + "/path");
    doc->m_minus_one = j.contains("m_minus_one") ? need_series<Rational>(j["m_minus_one"], E, at + "/m_minus_one") : A.zero();
    if (j.contains("gw")) doc->gw = need_series<Rational>(j["gw"], E, at + "/gw");
    return doc;
}

}  // namespace detail

inline std::unique_ptr<Document> load_document_text(const std::string& text, const Overrides& ov = {}, const std::string& source = "<text>") {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DocumentError(source, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        auto doc = detail::load_json(j, ov, "");
        doc->source = source;
        return doc;
    } catch (const DocumentError& e) {
        throw DocumentError(source + ":" + (e.where().empty() ? "/" : e.where()), e.message());
    }
}

inline std::unique_ptr<Document> load_document(const std::string& path, const Overrides& ov = {}) {
    std::ifstream in(path);
    if (!in) throw DocumentError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_document_text(ss.str(), ov, path);
}

// The tower described by the document, built on its algebra.
inline CocycleTower document_tower(const Document& doc) {
    if (!doc.tower) throw ConfigError("document has no tower");
    const Algebra& A = *doc.algebra;
    const auto& ts = *doc.tower;
    if (ts.form == "table") return table_tower(A, ts.levels);
    std::vector<Cochain> parts;
    for (const auto& l : ts.levels) parts.push_back(table_cochain(l, A.emax));
    if (ts.form == "coboundary") return coboundary_tower(A, parts);
    return connecting_map(A, parts);
}

// ------------------------------------------------------------------------- writing

namespace detail {

inline Json element_json(const Basis& B, const Element<RingElement>& x) {
    Json j = Json::object();
    for (const auto& [i, c] : x) j[B.names[static_cast<std::size_t>(i)]] = to_string(c);
    return j;
}

inline Json element_json(const Basis& B, const Element<PathRingElement>& x) {
    Json j = Json::object();
    for (const auto& [i, c] : x) j[B.names[static_cast<std::size_t>(i)]] = to_string(c);
    return j;
}

}  // namespace detail

inline Json algebra_json(const Algebra& A, const Cutoffs& cut, const std::string& name) {
    Json j;
    j["version"] = 1;
    j["field"] = "rational";
    j["kind"] = "algebra";
    j["name"] = name;
    Json c;
    c["emax"] = to_string(cut.emax);
    c["kmax"] = cut.kmax;
    c["lmax"] = cut.lmax;
    if (cut.nmax)
        c["nmax"] = *cut.nmax;
    else
        c["nmax"] = "auto";
    c["depth"] = cut.depth;
    j["cutoffs"] = c;
    Json v;
    v["s"] = A.vars.deg_s;
    v["t"] = A.vars.deg_t;
    j["variables"] = v;
    Json basis = Json::array();
    for (int i = 0; i < A.basis.size(); ++i) basis.push_back({{"name", A.basis.names[static_cast<std::size_t>(i)]}, {"degree", A.basis.deg[static_cast<std::size_t>(i)]}});
    j["basis"] = basis;
    if (A.basis.has_unit()) j["unit"] = A.basis.names[static_cast<std::size_t>(A.basis.unit)];
    Json monoid = Json::array();
    for (const auto& m : A.monoid) monoid.push_back({{"lambda", to_string(m.lambda)}, {"mu", m.mu}});
    j["monoid"] = monoid;
    Json ops;
    ops["complete"] = A.complete;
    ops["table_arity"] = A.table_arity;
    Json entries = Json::array();
    auto sorted = A.entries;
    std::sort(sorted.begin(), sorted.end(), [](const OpEntry& a, const OpEntry& b) {
        if (a.inputs.size() != b.inputs.size()) return a.inputs.size() < b.inputs.size();
        if (a.inputs != b.inputs) return a.inputs < b.inputs;
        return a.beta < b.beta;
    });
    for (const auto& en : sorted) {
        Json in = Json::array();
        for (int x : en.inputs) in.push_back(A.basis.names[static_cast<std::size_t>(x)]);
        entries.push_back({{"beta", en.beta}, {"inputs", in}, {"output", detail::element_json(A.basis, en.output)}});
    }
    ops["entries"] = entries;
    j["operations"] = ops;
    return j;
}

inline Json tower_json(const Basis& B, const std::string& form, const std::vector<std::map<Word, RingElement>>& levels) {
    Json t;
    t["form"] = form;
    Json lv = Json::array();
    for (const auto& l : levels) {
        Json o = Json::object();
        for (const auto& [w, c] : l) o[detail::format_word(B, w)] = to_string(c);
        lv.push_back(o);
    }
    t["levels"] = lv;
    return t;
}

inline Json candidates_json(const Basis& B, const std::vector<Candidate>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back({{"name", c.name}, {"b", detail::element_json(B, c.b)}});
    return a;
}

inline Json path_json(const Basis& B, const Element<PathRingElement>& p) { return detail::element_json(B, p); }

inline Json homotopy_json(const Basis& B, const Homotopy& h) {
    Json j = Json::object();
    for (const auto& [i, x] : h) j[B.names[static_cast<std::size_t>(i)]] = detail::element_json(B, x);
    return j;
}

inline Json element_to_json(const Basis& B, const Element<RingElement>& x) { return detail::element_json(B, x); }

}  // namespace ainf
