#pragma once

// Subcommands of the ainf tool. Reports are JSON with every cutoff echoed; a short
// human-readable summary goes to the text stream.

#include "document.hpp"

#include <ostream>

namespace ainf {

struct CliOptions {
    std::string command;
    std::string input;
    std::optional<std::string> emax;
    std::optional<int> kmax, lmax, nmax;
    std::uint64_t seed = 1;
    std::optional<std::string> report;
    int chains = 100;  // random chains for the Hochschild identities in `check`
};

inline const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> c{"check", "cocycle", "mc", "potential", "gauge", "wallcross"};
    return c;
}

namespace detail {

struct Run {
    Json checks = Json::array();
    bool ok = true;
    std::ostream* out = nullptr;

    void add(const Report& r, const std::string& subject = "") {
        Json j;
        j["name"] = r.name;
        if (!subject.empty()) j["subject"] = subject;
        j["status"] = r.pass() ? "pass" : "fail";
        j["checked"] = r.checked;
        j["failures"] = r.failures;
        Json v = Json::object();
        for (const auto& [k, x] : r.values) v[k] = x;
        j["values"] = v;
        j["witnesses"] = r.witnesses;
        checks.push_back(j);
        ok = ok && r.pass();
        *out << (r.pass() ? "PASS " : "FAIL ") << r.name << (subject.empty() ? "" : " [" + subject + "]") << "  checked=" << r.checked
             << " failures=" << r.failures << "\n";
        for (const auto& [k, x] : r.values) *out << "    " << k << " = " << x << "\n";
        for (const auto& w : r.witnesses) *out << "    ! " << w << "\n";
    }
    // informational entry, never affects the exit status
    void info(const std::string& name, const std::string& subject, const std::vector<std::pair<std::string, std::string>>& values) {
        Json j;
        j["name"] = name;
        if (!subject.empty()) j["subject"] = subject;
        j["status"] = "info";
        Json v = Json::object();
        for (const auto& [k, x] : values) v[k] = x;
        j["values"] = v;
        checks.push_back(j);
        *out << "INFO " << name << (subject.empty() ? "" : " [" + subject + "]") << "\n";
        for (const auto& [k, x] : values) *out << "    " << k << " = " << x << "\n";
    }
};

inline std::string nmax_text(const std::optional<int>& n) { return n ? std::to_string(*n) : "auto"; }

inline Json cutoffs_json(const Document& d) {
    Json c;
    c["E_max"] = to_string(d.cut.emax);
    c["K_max"] = d.cut.kmax;
    c["L_max"] = d.cut.lmax;
    c["N_max"] = nmax_text(d.cut.nmax);
    c["D"] = d.cut.depth;
    return c;
}

inline const Document& need_algebra_doc(const Document& d, const std::string& cmd) {
    if (d.kind != "algebra") throw ConfigError("'" + cmd + "' needs an algebra document, got kind '" + d.kind + "'");
    return d;
}

// tower validation and phi; the validation report is always added
inline std::optional<InfinityInnerProduct> phi_of(Run& run, const Document& d, const std::string& subject = "") {
    if (!d.tower) throw ConfigError("document has no tower");
    auto pb = build_phi(*d.algebra, document_tower(d), d.cut.lmax);
    run.add(pb.validation, subject);
    return std::move(pb.phi);
}

inline int nmax_for(const Document& d, const Element<RingElement>& b) { return d.cut.nmax ? *d.cut.nmax : auto_nmax(*d.algebra, b); }

inline std::string element_text(const Basis& B, const Element<RingElement>& x) { return x.empty() ? "0" : to_string(B, x); }

inline void cmd_check(Run& run, const Document& d, const CliOptions& o) {
    const Algebra& A = *d.algebra;
    run.add(check_ainfty(A, d.cut.kmax));
    run.add(check_strict_unit(A, d.cut.kmax));
    Rng rng(o.seed);
    std::vector<LinComb<RingElement>> chains;
    for (int i = 0; i < o.chains; ++i) chains.push_back(random_reduced_chain(rng, A, std::min(d.cut.lmax + 1, 5)));
    auto r = check_chain_identities(A, chains);
    r.note("max_length", std::to_string(std::min(d.cut.lmax + 1, 5)));
    run.add(r);
}

inline void cmd_cocycle(Run& run, const Document& d) {
    const Algebra& A = *d.algebra;
    auto phi = phi_of(run, d);
    if (!phi) return;
    run.add(check_skew(*phi, d.cut.lmax));
    run.add(check_closed(*phi, d.cut.lmax));
    run.add(check_bimodule_hom(A, [&](const Word& a, int v, const Word& b, int w) { return (*phi)(a, v, b, w); }, d.cut.lmax));
    run.add(trace_identity(*phi));
    auto nd = homological_nondegeneracy(A, *phi);
    std::string reps;
    for (const auto& v : nd.representatives) {
        Element<RingElement> x;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) x[static_cast<int>(i)] = A.scalar(v[i]);
        reps += (reps.empty() ? "" : "; ") + element_text(A.basis, x);
    }
    run.info("homological_nondegeneracy", "",
             {{"nondegenerate", nd.nondegenerate ? "true" : "false"},
              {"cohomology_dim", std::to_string(nd.cohomology_dim)},
              {"pairing_rank", std::to_string(nd.rank)},
              {"representatives", reps}});
}

inline void cmd_mc(Run& run, const Document& d) {
    const Algebra& A = *d.algebra;
    for (const auto& c : d.candidates) {
        Report r;
        r.name = "weak_mc";
        ++r.checked;
        auto m0 = curvature(A, c.b);
        auto w = check_weak_mc(A, c.b);
        if (!w.is_weak_mc) r.fail("m0^b = " + element_text(A.basis, m0) + " is not a multiple of the unit");
        auto deg = homogeneous_degree(A.basis, A.vars, c.b);
        if (!c.b.empty() && (!deg || *deg != 1)) r.fail("b is not homogeneous of degree 1");
        r.note("c", to_string(w.c));
        r.note("m0^b", element_text(A.basis, m0));
        run.add(r, c.name);
    }
    if (d.mc_seed) {
        Report r;
        r.name = "solve_mc";
        ++r.checked;
        auto s = solve_mc(A, d.homotopy, *d.mc_seed);
        if (!s.solved) {
            r.fail("obstruction at energy " + to_string(*s.obstruction_energy) + ": " + element_text(A.basis, s.obstruction));
            r.note("obstruction_energy", to_string(*s.obstruction_energy));
        } else {
            r.note("b", element_text(A.basis, s.b));
            r.note("c", to_string(s.c));
        }
        r.note("steps", std::to_string(s.steps));
        run.add(r, "mc_seed");
    }
}

inline void cmd_potential(Run& run, const Document& d, const CliOptions& o) {
    const Algebra& A = *d.algebra;
    auto phi = phi_of(run, d);
    if (!phi) return;
    auto T = document_tower(d);
    Rng rng(o.seed);
    for (const auto& c : d.candidates) {
        Report r;
        r.name = "potential";
        int N = nmax_for(d, c.b);
        RingElement pp = infty_cyclic_potential(A, *phi, c.b, N);
        RingElement full = d.m_minus_one + pp;
        ++r.checked;
        r.note("N_max", std::to_string(N));
        r.note("Phi'", to_string(pp));
        r.note("m_-1", to_string(d.m_minus_one));
        r.note("Phi", to_string(full));
        if (T.strict) {
            ++r.checked;
            RingElement sp = strict_cyclic_potential(A, T, c.b, N);
            r.note("strict", to_string(sp));
            if (sp != pp) r.fail("strict-cyclic formula gives " + to_string(sp) + ", infinity-cyclic gives " + to_string(pp));
        }
        run.add(r, c.name);
        if (c.b.empty()) continue;
        run.add(weak_cyclic_check(A, *phi, c.b, c.b, N), c.name + ", y = b");
        auto y = random_element(rng, A, 0, make_rational(1, 2), make_rational(3, 2));
        auto wr = weak_cyclic_check(A, *phi, c.b, y, N);
        wr.note("y", element_text(A.basis, y));
        run.add(wr, c.name + ", seeded y");
    }
}

inline void cmd_gauge(Run& run, const Document& d) {
    const Algebra& A = *d.algebra;
    if (!d.path) throw ConfigError("document has no path");
    auto phi = phi_of(run, d);
    if (!phi) return;
    auto g = gauge_invariance_check(A, *phi, *d.path, d.cut.nmax);
    g.report.note("N_max", nmax_text(d.cut.nmax));
    run.add(g.report);
}

inline void wallcross_side(Run& run, const Document& d, const InfinityInnerProduct& phi, const Candidate& c, const std::string& subject) {
    const Algebra& A = *d.algebra;
    int N = nmax_for(d, c.b);
    auto w = wall_crossing_decomposition(A, phi, c.b, N);
    Report r;
    r.name = "wallcross_identities";
    r.checked = 2;
    if (!w.residual_I1.is_zero()) r.fail("I1 residual " + to_string(w.residual_I1));
    if (!w.residual_I2.is_zero()) r.fail("I2 residual " + to_string(w.residual_I2));
    r.note("N_max", std::to_string(N));
    for (const auto& [k, v] : std::vector<std::pair<std::string, const RingElement*>>{{"ksplit", &w.ksplit},
                                                                                     {"psplit", &w.psplit},
                                                                                     {"qsplit", &w.qsplit},
                                                                                     {"output", &w.output},
                                                                                     {"clsum", &w.clsum},
                                                                                     {"rhs", &w.rhs},
                                                                                     {"tail_k1=k2=0", &w.tail00},
                                                                                     {"errorterm_v0", &w.errorterm_v0},
                                                                                     {"v1_deformed_lhs", &w.v1_deformed_lhs},
                                                                                     {"v1_deformed_rhs", &w.v1_deformed_rhs},
                                                                                     {"v1_plain_lhs", &w.v1_plain_lhs},
                                                                                     {"v1_plain_rhs", &w.v1_plain_rhs}})
        r.note(k, to_string(*v));
    run.add(r, subject);
    if (check_weak_mc(A, c.b).is_weak_mc) run.add(unit_insertion_vanishing(A, phi, c.b, N), subject);
}

inline void cmd_wallcross(Run& run, const Document& d) {
    if (d.kind == "wallcross_pair") {
        auto side = [&](const Document& s, const std::string& label) -> std::optional<InfinityInnerProduct> {
            auto phi = phi_of(run, s, label);
            if (phi && s.candidates.empty()) throw ConfigError(label + " side has no candidate b");
            return phi;
        };
        auto pm = side(*d.minus, "minus");
        auto pp = side(*d.plus, "plus");
        if (!pm || !pp) return;
        PotentialInput in_m{d.minus->algebra.get(), &*pm, d.minus->candidates[0].b, d.minus->m_minus_one, d.gw};
        PotentialInput in_p{d.plus->algebra.get(), &*pp, d.plus->candidates[0].b, d.plus->m_minus_one, d.gw};
        std::optional<int> N = d.cut.nmax;
        if (!N) N = std::max(auto_nmax(*d.minus->algebra, in_m.b), auto_nmax(*d.plus->algebra, in_p.b));
        auto r = wall_crossing_report(in_m, in_p, N);
        r.report.note("N_max", std::to_string(*N));
        run.add(r.report);
        wallcross_side(run, *d.minus, *pm, d.minus->candidates[0], "minus " + d.minus->candidates[0].name);
        wallcross_side(run, *d.plus, *pp, d.plus->candidates[0], "plus " + d.plus->candidates[0].name);
        return;
    }
    auto phi = phi_of(run, d);
    if (!phi) return;
    for (const auto& c : d.candidates) wallcross_side(run, d, *phi, c, c.name);
}

}  // namespace detail

// Returns the exit status: 0 all checks pass, 1 some check failed, 2 usage or input error.
inline int run_cli(const CliOptions& o, std::ostream& out, std::ostream& err) {
    const auto& cmds = cli_commands();
    if (std::find(cmds.begin(), cmds.end(), o.command) == cmds.end()) {
        err << "unknown command '" << o.command << "'\n";
        return 2;
    }
    Json report;
    detail::Run run;
    run.out = &out;
    try {
        Overrides ov;
        if (o.emax) ov.emax = parse_rational(*o.emax);
        ov.kmax = o.kmax;
        ov.lmax = o.lmax;
        ov.nmax = o.nmax;
        auto doc = load_document(o.input, ov);
        report["tool"] = "ainf";
        report["report_version"] = 1;
        report["command"] = o.command;
        report["input"] = o.input;
        report["cutoffs"] = detail::cutoffs_json(*doc);
        report["seed"] = o.seed;
        out << o.command << " " << o.input << "  E_max=" << to_string(doc->cut.emax) << " K_max=" << doc->cut.kmax << " L_max=" << doc->cut.lmax
            << " N_max=" << detail::nmax_text(doc->cut.nmax) << " D=" << doc->cut.depth << " seed=" << o.seed << "\n";
        if (o.command == "wallcross") {
            detail::cmd_wallcross(run, *doc);
        } else {
            const Document& d = detail::need_algebra_doc(*doc, o.command);
            report["algebra"] = d.algebra->name;
            if (o.command == "check")
                detail::cmd_check(run, d, o);
            else if (o.command == "cocycle")
                detail::cmd_cocycle(run, d);
            else if (o.command == "mc")
                detail::cmd_mc(run, d);
            else if (o.command == "potential")
                detail::cmd_potential(run, d, o);
            else if (o.command == "gauge")
                detail::cmd_gauge(run, d);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (offset " << e.pos << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    report["checks"] = run.checks;
    report["status"] = run.ok ? "pass" : "fail";
    out << (run.ok ? "status: pass" : "status: fail") << "\n";
    if (o.report) {
        std::ofstream f(*o.report);
        if (!f) {
            err << "error: cannot write report " << *o.report << "\n";
            return 2;
        }
        f << report.dump(2) << "\n";
    }
    return run.ok ? 0 : 1;
}

}  // namespace ainf
