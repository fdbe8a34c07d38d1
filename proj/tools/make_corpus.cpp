// Writes the input corpus into the given directory.

#include "ainf/reference.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace ainf;

namespace {

void write(const std::filesystem::path& dir, const std::string& file, const Json& j) {
    std::ofstream f(dir / file);
    if (!f) throw std::runtime_error("cannot write " + (dir / file).string());
    f << j.dump(2) << "\n";
    std::cout << "wrote " << (dir / file).string() << "\n";
}

Cutoffs cut(const Rational& E, int kmax, int lmax, std::optional<int> nmax = std::nullopt) {
    Cutoffs c;
    c.emax = E;
    c.kmax = kmax;
    c.lmax = lmax;
    c.nmax = nmax;
    return c;
}

Element<RingElement> elem(const Basis& B, const Rational& E, std::initializer_list<std::pair<const char*, const char*>> xs) {
    Element<RingElement> x;
    for (const auto& [n, c] : xs) add_term(x, B.index(n), parse_ring(c, E));
    return x;
}

Json algebra_doc(const Algebra& A, const Cutoffs& c, const std::map<Word, RingElement>& tower, const std::vector<Candidate>& cands,
                 const std::string& m_minus_one) {
    Json j = algebra_json(A, c, A.name);
    j["tower"] = tower_json(A.basis, "table", {tower});
    j["candidates"] = candidates_json(A.basis, cands);
    j["m_minus_one"] = m_minus_one;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_corpus <output directory>\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    const Rational E(3);

    {
        auto A = e1(E);
        write(dir, "e1.json",
              algebra_doc(A, cut(E, 6, 4), reference::poincare_e1(A), {{"b", elem(A.basis, E, {{"x", "T^1/2"}})}}, "0"));
    }
    {
        auto A = e2(E);
        std::vector<Candidate> cands{{"b1", elem(A.basis, E, {{"x", "2 T^1/2"}})},
                                     {"b2", elem(A.basis, E, {{"x", "-1/3 T + T^3/2 s"}})},
                                     {"zero", {}}};
        write(dir, "e2.json", algebra_doc(A, cut(E, 6, 4), reference::poincare_e1(A), cands, "5 T^2 e"));
    }
    {
        auto A = reference::torus(E);
        std::vector<Candidate> cands{{"b", elem(A.basis, E, {{"a", "T^1/2"}, {"b", "-2 T^1/2 + T t0"}})}};
        write(dir, "torus.json", algebra_doc(A, cut(E, 5, 4), reference::poincare_torus(A), cands, "0"));
    }
    {
        auto tw = reference::twisted_torus(E);
        auto base = reference::torus(E);
        auto b = push_element(base, tw.F, elem(base.basis, E, {{"a", "T^1/2"}, {"b", "-2 T^1/2"}}));
        write(dir, "torus_twisted.json", algebra_doc(tw.algebra, cut(E, 5, 4), tw.tower, {{"b", b}}, "0"));
    }
    Json gauge;
    {
        auto tw = reference::twisted_interval(E);
        const Algebra& A = tw.algebra;
        auto path = reference::gauge_path(tw);
        std::vector<Candidate> cands{{"b0", specialize_element(path, Rational(0))}, {"b1", specialize_element(path, Rational(1))}};
        gauge = algebra_doc(A, cut(E, 4, 3), tw.tower, cands, "T^2 e");
        gauge["path"] = path_json(A.basis, path);
        gauge["homotopy"] = homotopy_json(A.basis, reference::interval_homotopy(A));
        gauge["mc_seed"] = element_to_json(A.basis, elem(A.basis, E, {{"g", "T^1/2"}, {"x", "2 T^1/2"}}));
        write(dir, "gauge_path.json", gauge);

        Json pair;
        pair["version"] = 1;
        pair["field"] = "rational";
        pair["kind"] = "wallcross_pair";
        pair["name"] = "gauge_pair";
        pair["cutoffs"] = gauge["cutoffs"];
        pair["gw"] = "0";
        Json minus = gauge, plus = gauge;
        for (auto* side : {&minus, &plus}) {
            side->erase("path");
            side->erase("homotopy");
            side->erase("mc_seed");
            side->erase("cutoffs");
        }
        minus["candidates"] = candidates_json(A.basis, {cands[0]});
        plus["candidates"] = candidates_json(A.basis, {cands[1]});
        pair["minus"] = minus;
        pair["plus"] = plus;
        write(dir, "wallcross_pair.json", pair);
    }
    return 0;
}
