#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "buchsbaum/ideal_io.hpp"
#include "buchsbaum/report.hpp"
#include "buchsbaum/surfaces.hpp"

using namespace buchsbaum;
using report::json;

namespace {

/* bad flag values and malformed auxiliary inputs; exits 3 like file syntax */
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Common {
    std::string path;
    std::string window = "-10:10";
    uint64_t seed = 12347;
    int trials = 20;
    bool emit_json = false;
    bool saturate = false;
    int wlo = -10, whi = 10;
};

struct ErrorContext {
    bool emit_json = false;
    std::string command;
    std::string input;
} g_ctx;

void add_common(CLI::App* sub, Common& c, const char* input_desc, bool ideal_input) {
    sub->add_option("input", c.path, input_desc)->required();
    sub->add_option("--window", c.window, "degree window a:b (default -10:10)");
    sub->add_option("--seed", c.seed, "seed for randomized certificates (default 12347)");
    sub->add_option("--trials", c.trials, "trial budget for randomized certificates (default 20)");
    sub->add_flag("--json", c.emit_json, "emit a JSON report instead of text");
    if (ideal_input)
        sub->add_flag("--saturate", c.saturate,
                      "replace an unsaturated input ideal by its saturation");
}

void begin(Common& c, const char* cmd) {
    g_ctx = {c.emit_json, cmd, c.path};
    const std::string& w = c.window;
    size_t colon = w.find(':', 1);
    bool ok = colon != std::string::npos;
    if (ok) {
        try {
            size_t used = 0;
            c.wlo = std::stoi(w.substr(0, colon), &used);
            ok = used == colon;
            std::string hi = w.substr(colon + 1);
            c.whi = std::stoi(hi, &used);
            ok = ok && used == hi.size() && !hi.empty();
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok) throw UsageError("--window wants a:b with integers a <= b, got '" + w + "'");
    if (c.wlo > c.whi) throw UsageError("--window wants a <= b, got '" + w + "'");
    if (c.trials < 1) throw UsageError("--trials wants a positive count");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Loaded {
    IdealFile file;
    std::string digest;
    bool saturation_applied = false;
    std::optional<SaturatedIdeal> X;
};

Loaded load_ideal(const Common& c) {
    Loaded L;
    std::string text = slurp(c.path);
    L.digest = report::digest_of(text);
    L.file = parse_ideal_text(text);
    SaturationStatus st = saturation_status(L.file.ring, L.file.gens);
    if (!st.saturated) {
        if (!c.saturate)
            throw AlgebraError(
                "ideal is not saturated; pass --saturate to replace it by its saturation");
        L.file.gens = st.saturation;
        L.saturation_applied = true;
    }
    L.X = saturated_ideal(L.file.ring, L.file.gens);
    return L;
}

json envelope(const Common& c, const std::string& digest, const PolyRing& r,
              bool sat_applied) {
    json j;
    j["schema"] = "buchsbaum-lab/1";
    j["command"] = g_ctx.command;
    j["input"] = c.path;
    j["digest"] = digest;
    j["p"] = r.field.p;
    j["nvars"] = r.nvars;
    j["window"] = json::array({c.wlo, c.whi});
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["saturation_applied"] = sat_applied;
    return j;
}

/* ----- text formatting ----- */

std::string fmt_free(const std::vector<int>& twists) {
    std::map<int, int> cnt;
    for (int t : twists) cnt[t] += 1;
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, n] : cnt) {
        if (!first) os << " + ";
        first = false;
        os << "O(" << -t << ")";
        if (n > 1) os << "^" << n;
    }
    return os.str();
}

std::string fmt_block(const OmegaSummand& b) {
    std::ostringstream os;
    os << "Omega^" << b.p << "(" << -b.e << ")";
    if (b.s > 1) os << "^" << b.s;
    return os.str();
}

std::string fmt_level(const std::vector<int>& twists, const std::vector<OmegaSummand>& blocks) {
    std::string f = fmt_free(twists);
    std::ostringstream os;
    os << f;
    for (const OmegaSummand& b : blocks) {
        if (os.tellp() > 0) os << " + ";
        os << fmt_block(b);
    }
    std::string s = os.str();
    return s.empty() ? "0" : s;
}

void print_betti(const std::map<std::pair<int, int>, int>& b) {
    for (const auto& [ij, v] : b)
        std::cout << "  b(" << ij.first << "," << ij.second << ") = " << v << "\n";
}

void print_omega_levels(const OmegaResolution& o) {
    for (size_t l = 0; l < o.free_twists.size(); ++l)
        std::cout << "  level " << l + 1 << ": "
                  << fmt_level(o.free_twists[l], l == 0 ? o.summands : std::vector<OmegaSummand>{})
                  << "\n";
}

void print_header(const Common& c, const Loaded& L) {
    std::cout << "input: " << c.path << "\n";
    std::cout << "digest: " << L.digest << "\n";
    if (L.saturation_applied) std::cout << "note: input replaced by its saturation\n";
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

/* ----- subcommands ----- */

void cmd_betti(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    auto bI = X.I.betti_table();
    auto bA = X.A.betti_table();
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["ideal_betti"] = report::betti_json(bI);
        j["quotient_betti"] = report::betti_json(bA);
        j["regularity"] = X.I.regularity();
        j["proj_dim_quotient"] = X.A.proj_dim();
        j["depth_quotient"] = X.A.depth();
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "minimal free resolution of I (level, degree, count):\n";
    print_betti(bI);
    std::cout << "minimal free resolution of R/I:\n";
    print_betti(bA);
    std::cout << "reg: " << X.I.regularity() << "\n";
    std::cout << "proj dim of R/I: " << X.A.proj_dim() << ", depth: " << X.A.depth() << "\n";
}

void cmd_cohomology(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    CohomologyTable T = sheaf_cohomology_table(X);
    int ex = index_of_speciality(X);
    GapCriterionResult gap = gap_criterion_check(T);
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["table"] = report::cohomology_json(T);
        json rows = json::array();
        for (int i : T.infinite_rows) {
            json ent = json::array();
            for (int t = c.wlo; t <= c.whi; ++t)
                ent.push_back({{"t", t}, {"h", local_cohomology_dim(X.A, i, t)}});
            rows.push_back({{"i", i}, {"window_limited", true}, {"entries", ent}});
        }
        j["infinite_row_windows"] = rows;
        j["speciality"] = ex;
        j["gap_criterion"] = {{"holds", gap.holds}, {"detail", gap.detail}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "intermediate cohomology h^i(J(t)), 1 <= i <= " << T.dim_x() << ":\n";
    if (T.h.empty() && T.infinite_rows.empty()) std::cout << "  (all rows vanish)\n";
    for (const auto& [it, h] : T.h)
        std::cout << "  h^" << it.first << "(J(" << it.second << ")) = " << h << "\n";
    for (int i : T.infinite_rows) {
        std::cout << "  row " << i << " has infinite support; over the window [" << c.wlo << ", "
                  << c.whi << "]:\n";
        for (int t = c.wlo; t <= c.whi; ++t) {
            int h = local_cohomology_dim(X.A, i, t);
            if (h) std::cout << "    h^" << i << "(J(" << t << ")) = " << h << "\n";
        }
    }
    if (!T.annihilated_rows.empty()) {
        std::cout << "rows killed by the irrelevant ideal:";
        for (int i : T.annihilated_rows) std::cout << " " << i;
        std::cout << "\n";
    }
    std::cout << "e(X): " << ex << "\n";
    std::cout << "gap criterion: " << (gap.holds ? "holds" : "fails") << "\n";
    if (!gap.holds) std::cout << "  " << gap.detail << "\n";
}

struct ArithOutcome {
    std::string verdict;  // "yes", "no", "probably not"
    std::string reason;
    int trials_used = 0;
    std::string error_bound;
    std::optional<OmegaResolution> resolution;
};

ArithOutcome run_arith(const SaturatedIdeal& X, const Common& c) {
    if (X.A.depth() == X.A.dim()) {
        ArithOutcome out{"yes", "arithmetically Cohen-Macaulay", 0, "0 (certified)", {}};
        if (X.c >= 2) {
            ArithBuchsbaumResult r = arith_buchsbaum_test(X, c.trials, c.seed);
            if (r.verdict != ArithBuchsbaumResult::kBuchsbaum)
                throw InvariantError("an arithmetically Cohen-Macaulay ideal failed the "
                                     "Buchsbaum decomposition: " +
                                     r.reason);
            out.trials_used = r.trials_used;
            out.resolution = std::move(r.resolution);
        }
        return out;
    }
    ArithBuchsbaumResult r = arith_buchsbaum_test(X, c.trials, c.seed);
    ArithOutcome out;
    out.reason = r.reason;
    out.trials_used = r.trials_used;
    switch (r.verdict) {
        case ArithBuchsbaumResult::kBuchsbaum:
            out.verdict = "yes";
            out.error_bound = "0 (certified)";
            break;
        case ArithBuchsbaumResult::kNotBuchsbaumCertified:
            out.verdict = "no";
            out.error_bound = "0 (certified)";
            break;
        case ArithBuchsbaumResult::kNotBuchsbaumProbable:
            out.verdict = "probably not";
            out.error_bound = report::iso_error_bound(
                q_presentation(X.I, X.c - 1).E.min_gen_count(), X.r.field.p, c.trials);
            break;
    }
    out.resolution = std::move(r.resolution);
    return out;
}

json arith_json(const ArithOutcome& a) {
    json j;
    j["verdict"] = a.verdict;
    j["reason"] = a.reason;
    j["trials_used"] = a.trials_used;
    j["error_bound"] = a.error_bound;
    return j;
}

void cmd_check(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    int dim_a = X.A.dim();
    int depth_a = X.A.depth();
    bool acm = depth_a == dim_a;
    int reg = X.I.regularity();
    int ex = index_of_speciality(X);
    long long degree = X.A.multiplicity();
    QuasiBuchsbaumResult quasi = quasi_buchsbaum_test(X);
    ArithOutcome arith = run_arith(X, c);
    if (acm && arith.verdict != "yes")
        throw InvariantError("verdict consistency: aCM but not arithmetically Buchsbaum");
    if (arith.verdict == "yes" && !quasi.holds)
        throw InvariantError("verdict consistency: arithmetically Buchsbaum but not quasi-Buchsbaum");
    std::optional<SurfacePresentation> sp;
    if (X.r.nvars == 5 && X.c == 2) sp = surface_presentation(X);

    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["invariants"] = {{"dim", X.dim_x()},   {"codim", X.c},  {"degree", degree},
                           {"depth", depth_a},   {"reg", reg},    {"speciality", ex}};
        json v;
        v["saturated"] = true;
        v["acm"] = acm;
        v["quasi_buchsbaum"] = quasi.holds;
        v["arith_buchsbaum"] = arith.verdict;
        if (sp) {
            v["equidimensional"] = sp->equidimensional;
            v["equidimensional_cm"] = sp->equidimensional_cm;
        }
        j["verdicts"] = v;
        json cert;
        json q;
        q["holds"] = quasi.holds;
        q["nonzero_rows"] = quasi.nonzero_rows;
        if (!quasi.holds)
            q["witness"] = {{"i", quasi.witness_i},
                            {"variable", quasi.witness_var},
                            {"generator", quasi.witness_gen}};
        cert["quasi_buchsbaum"] = q;
        cert["arith_buchsbaum"] = arith_json(arith);
        if (sp)
            cert["surface"] = {{"e1_torsion_free", sp->e1_torsion_free},
                               {"e2_reflexive", sp->e2_reflexive},
                               {"e1_bundle", sp->e1_bundle},
                               {"e2_bundle", sp->e2_bundle}};
        j["certificates"] = cert;
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "saturated: yes\n";
    std::cout << "dim: " << X.dim_x() << "\n";
    std::cout << "codim: " << X.c << "\n";
    std::cout << "degree: " << degree << "\n";
    std::cout << "depth: " << depth_a << " (of R/I, dim " << dim_a << ")\n";
    std::cout << "reg: " << reg << "\n";
    std::cout << "e(X): " << ex << "\n";
    std::cout << "aCM: " << yesno(acm) << "\n";
    std::cout << "quasi-Buchsbaum: " << yesno(quasi.holds) << "\n";
    std::cout << "arithmetically Buchsbaum: " << arith.verdict;
    if (arith.verdict == "yes" && arith.trials_used > 0)
        std::cout << " (certified, trials used " << arith.trials_used << ")";
    else if (arith.verdict != "yes")
        std::cout << " (" << arith.reason << "; error bound " << arith.error_bound << ")";
    std::cout << "\n";
    if (sp) {
        std::cout << "equidimensional: " << yesno(sp->equidimensional) << "\n";
        std::cout << "equidimensional and locally CM: " << yesno(sp->equidimensional_cm) << "\n";
    }
}

void cmd_omega(const Common& c, bool expand) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    if (X.c < 2) throw AlgebraError("the Buchsbaum test needs codimension 2..n");
    ArithOutcome arith = run_arith(X, c);
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["arith_buchsbaum"] = arith_json(arith);
        if (arith.resolution) {
            j["resolution"] = report::omega_json(*arith.resolution);
            if (expand) {
                MappingCone cone = mapping_cone_expand(*arith.resolution);
                auto direct = X.I.betti_table();
                if (cone.min_betti != direct)
                    throw InvariantError(
                        "mapping cone minimalization disagrees with the resolution of I");
                j["cone_raw_betti"] = report::betti_json(cone.raw_betti);
                j["cone_min_betti"] = report::betti_json(cone.min_betti);
                j["cone_matches_direct_resolution"] = true;
            }
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    if (arith.verdict != "yes") {
        std::cout << "not arithmetically Buchsbaum: " << arith.reason << "\n";
        std::cout << "verdict: " << arith.verdict << ", error bound " << arith.error_bound
                  << "\n";
        return;
    }
    std::cout << "arithmetically Buchsbaum: yes\n";
    const OmegaResolution& o = *arith.resolution;
    std::cout << "omega-resolution (" << (o.minimal ? "minimal" : "not minimal") << "):\n";
    print_omega_levels(o);
    if (expand) {
        MappingCone cone = mapping_cone_expand(o);
        auto direct = X.I.betti_table();
        std::cout << "mapping cone Betti numbers (raw):\n";
        print_betti(cone.raw_betti);
        std::cout << "minimalized:\n";
        print_betti(cone.min_betti);
        if (cone.min_betti != direct)
            throw InvariantError("mapping cone minimalization disagrees with the resolution of I");
        std::cout << "agrees with the minimal free resolution of I: yes\n";
    }
}

void cmd_weak_omega(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    WeakOmegaResolution w = weak_omega_resolution(X, c.trials, c.seed);
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["weak_omega"] = report::weak_json(w);
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "weak omega-resolution (" << (w.minimal ? "minimal" : "not minimal") << "), "
              << w.s << " levels, rows annihilated up to v = " << w.v << ":\n";
    for (size_t l = 0; l < w.levels.size(); ++l)
        std::cout << "  level " << l + 1 << ": "
                  << fmt_level(w.levels[l].free_twists, w.levels[l].summands) << "\n";
}

void cmd_qpres(const Common& c, int q) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    QPresentation qp = q_presentation(X.I, q);
    QPresCheck ck = check_q_presentation(qp, c.wlo, c.whi);
    QPresMinimalityResult mn = q_presentation_minimality(qp, X.c == qp.q + 1);
    std::vector<int> edeg = qp.E.min_gen_degrees();
    std::vector<int> pdeg = qp.P.min_gen_degrees();
    std::sort(edeg.begin(), edeg.end());
    std::sort(pdeg.begin(), pdeg.end());
    bool exact =
        ck.well_defined && ck.injective && ck.surjective && ck.composite_zero && ck.additive;
    const char* mncode = mn.verdict == QPresMinimality::certified_minimal ? "certified minimal"
                         : mn.verdict == QPresMinimality::constructed_minimal
                             ? "constructed minimal"
                             : "not minimal";
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["q"] = qp.q;
        j["E_degrees"] = edeg;
        j["P_degrees"] = pdeg;
        j["checks"] = {{"well_defined", ck.well_defined},
                       {"injective", ck.injective},
                       {"surjective", ck.surjective},
                       {"composite_zero", ck.composite_zero},
                       {"additive", ck.additive},
                       {"pd_ok", ck.pd_ok},
                       {"band_vanishing", ck.band_vanishing},
                       {"distributes_E", ck.distributes_E},
                       {"distributes_P", ck.distributes_P},
                       {"all", ck.all()}};
        j["minimality"] = {{"verdict", mncode}, {"detail", mn.detail}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "q-presentation of the ideal module, q = " << qp.q << ": 0 -> P -> E -> I -> 0\n";
    auto degs = [](const std::vector<int>& d) {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i];
        os << "]";
        return os.str();
    };
    std::cout << "E minimal generator degrees: " << degs(edeg) << "\n";
    std::cout << "P minimal generator degrees: " << degs(pdeg) << "\n";
    std::cout << "exact: " << yesno(exact) << "\n";
    std::cout << "proj dim P < q: " << yesno(ck.pd_ok) << "\n";
    std::cout << "cohomology distributed over the window [" << c.wlo << ", " << c.whi
              << "]: " << yesno(ck.band_vanishing && ck.distributes_E && ck.distributes_P) << "\n";
    std::cout << "minimality: " << mncode << " (" << mn.detail << ")\n";
}

void cmd_hyperplane(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    OmegaResolution o = omega_resolution(X, c.trials, c.seed);
    OmegaResolution h = hyperplane_transform(o);
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["resolution"] = report::omega_json(o);
        j["section"] = report::omega_json(h);
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    std::cout << "omega-resolution in P^" << o.n << " (minimal):\n";
    print_omega_levels(o);
    std::cout << "general hyperplane section in P^" << h.n << " (not minimalized):\n";
    print_omega_levels(h);
}

OmegaSummand summand_from_json(const json& b) {
    if (!b.contains("p") || !b.contains("e") || !b.contains("s"))
        throw UsageError("shape summands want keys p, e, s");
    return OmegaSummand{b["p"].get<int>(), b["e"].get<int>(), b["s"].get<int>()};
}

void cmd_construct(const Common& c) {
    std::string text = slurp(c.path);
    std::string digest = report::digest_of(text);
    json root;
    try {
        root = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("shape JSON: ") + e.what(), 0, 0);
    }
    if (root.contains("weak_omega")) root = root["weak_omega"];
    if (!root.contains("levels") || !root["levels"].is_array())
        throw UsageError("shape JSON wants a 'levels' array");
    if (root["levels"].size() != 2)
        throw UsageError("construct wants exactly two levels in the shape");
    if (!root.contains("n")) throw UsageError("shape JSON wants the ambient dimension key 'n'");
    int n = root["n"].get<int>();
    uint32_t p = root.value("p", uint32_t(32003));
    PolyRing r(PrimeField(p), n + 1);
    SurfaceShape shape;
    WeakLevel* lvls[2] = {&shape.level1, &shape.level2};
    for (size_t k = 0; k < 2; ++k) {
        const json& lj = root["levels"][k];
        if (lj.contains("free_twists"))
            lvls[k]->free_twists = lj["free_twists"].get<std::vector<int>>();
        if (lj.contains("summands"))
            for (const json& b : lj["summands"]) lvls[k]->summands.push_back(summand_from_json(b));
    }
    ConstructedIdeal out = construct_from_shape(r, shape, c.seed);
    const SaturatedIdeal& X = out.X;
    if (c.emit_json) {
        json j = envelope(c, digest, r, false);
        j["seed_used"] = out.seed_used;
        j["twist"] = out.twist;
        j["dim"] = X.dim_x();
        j["codim"] = X.c;
        j["degree"] = X.A.multiplicity();
        json gens = json::array();
        for (const Polynomial& g : X.gens) gens.push_back(g.str());
        j["gens"] = gens;
        j["ideal_betti"] = report::betti_json(X.I.betti_table());
        j["cohomology"] = report::cohomology_json(sheaf_cohomology_table(X));
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "# constructed from shape: " << c.path << "\n";
    std::cout << "# seed used: " << out.seed_used << "\n";
    std::cout << "# embedding twist: " << out.twist << "\n";
    std::cout << "# dim " << X.dim_x() << ", codim " << X.c << ", degree "
              << X.A.multiplicity() << "\n";
    std::cout << ideal_file_text(r, X.gens);
}

void cmd_surface_lift(const Common& c) {
    Loaded L = load_ideal(c);
    const SaturatedIdeal& X = *L.X;
    WeakOmegaResolution w = weak_omega_resolution(X, c.trials, c.seed);
    LiftingTest lt = lifting_test(w);
    if (c.emit_json) {
        json j = envelope(c, L.digest, X.r, L.saturation_applied);
        j["weak_omega"] = report::weak_json(w);
        j["lifts"] = lt.lifts;
        j["obstruction"] = lt.obstruction;
        j["verdict"] =
            lt.lifts ? "arithmetically Buchsbaum" : "not arithmetically Buchsbaum";
        std::cout << j.dump(2) << "\n";
        return;
    }
    print_header(c, L);
    for (size_t l = 0; l < w.levels.size(); ++l)
        std::cout << "level " << l + 1 << ": "
                  << fmt_level(w.levels[l].free_twists, w.levels[l].summands) << "\n";
    if (lt.lifts)
        std::cout << "arithmetically Buchsbaum: the augmentation lifts across the free cover\n";
    else
        std::cout << "not arithmetically Buchsbaum: obstruction " << lt.obstruction << "\n";
}

int fail(int code, const char* kind, const std::string& msg, const ParseError* pe = nullptr) {
    if (g_ctx.emit_json) {
        json j;
        j["schema"] = "buchsbaum-lab/1";
        j["command"] = g_ctx.command;
        j["input"] = g_ctx.input;
        json e;
        e["kind"] = kind;
        e["message"] = msg;
        if (pe && pe->line > 0) {
            e["line"] = pe->line;
            e["column"] = pe->col;
        }
        j["error"] = e;
        j["exit_code"] = code;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cerr << kind << ": " << msg << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded modules, local cohomology, and Buchsbaum certificates over F_p"};
    app.require_subcommand(1);

    Common c_betti, c_coh, c_check, c_omega, c_weak, c_qpres, c_hyp, c_cons, c_lift;
    bool expand = false;
    int q = 1;

    CLI::App* s_betti = app.add_subcommand("betti", "Betti tables of the ideal and its quotient");
    add_common(s_betti, c_betti, "ideal file", true);
    CLI::App* s_coh =
        app.add_subcommand("cohomology", "intermediate cohomology of the ideal sheaf");
    add_common(s_coh, c_coh, "ideal file", true);
    CLI::App* s_check =
        app.add_subcommand("check", "saturation, invariants, and Buchsbaum verdicts");
    add_common(s_check, c_check, "ideal file", true);
    CLI::App* s_omega = app.add_subcommand("omega", "resolution of the ideal by form modules");
    add_common(s_omega, c_omega, "ideal file", true);
    s_omega->add_flag("--expand", expand, "expand the form blocks into a free resolution");
    CLI::App* s_weak =
        app.add_subcommand("weak-omega", "levelwise decomposition of the Eilenberg-MacLane sequence");
    add_common(s_weak, c_weak, "ideal file", true);
    CLI::App* s_qpres = app.add_subcommand("qpres", "q-presentation of the ideal module");
    add_common(s_qpres, c_qpres, "ideal file", true);
    s_qpres->add_option("--q", q, "presentation parameter (default 1)");
    CLI::App* s_hyp =
        app.add_subcommand("hyperplane", "resolution of a general hyperplane section");
    add_common(s_hyp, c_hyp, "ideal file", true);
    CLI::App* s_cons =
        app.add_subcommand("construct", "build a subscheme realizing a decomposition shape");
    add_common(s_cons, c_cons, "shape JSON file", false);
    CLI::App* s_lift =
        app.add_subcommand("surface-lift", "Buchsbaum test for a surface via the lifting criterion");
    add_common(s_lift, c_lift, "ideal file", true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (s_betti->parsed()) {
            begin(c_betti, "betti");
            cmd_betti(c_betti);
        } else if (s_coh->parsed()) {
            begin(c_coh, "cohomology");
            cmd_cohomology(c_coh);
        } else if (s_check->parsed()) {
            begin(c_check, "check");
            cmd_check(c_check);
        } else if (s_omega->parsed()) {
            begin(c_omega, "omega");
            cmd_omega(c_omega, expand);
        } else if (s_weak->parsed()) {
            begin(c_weak, "weak-omega");
            cmd_weak_omega(c_weak);
        } else if (s_qpres->parsed()) {
            begin(c_qpres, "qpres");
            cmd_qpres(c_qpres, q);
        } else if (s_hyp->parsed()) {
            begin(c_hyp, "hyperplane");
            cmd_hyperplane(c_hyp);
        } else if (s_cons->parsed()) {
            begin(c_cons, "construct");
            cmd_construct(c_cons);
        } else if (s_lift->parsed()) {
            begin(c_lift, "surface-lift");
            cmd_surface_lift(c_lift);
        }
        return 0;
    } catch (const ParseError& e) {
        return fail(3, "parse error", e.what(), &e);
    } catch (const UsageError& e) {
        return fail(3, "usage error", e.what());
    } catch (const AlgebraError& e) {
        return fail(2, "error", e.what());
    } catch (const InvariantError& e) {
        return fail(4, "internal invariant violated", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(3, "parse error", e.what());
    } catch (const std::exception& e) {
        return fail(4, "internal error", e.what());
    }
}
