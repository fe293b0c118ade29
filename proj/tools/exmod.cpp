// Workbench command line: single computations, module experiments, Groebner
// utilities and corpus generation with deterministic JSON/CSV reports.
// Exit codes: 0 ok, 1 violated invariant, 2 usage or input error.

#include <CLI11.hpp>
#include <iostream>

#include "exmod/corpus.hpp"
#include "exmod/json_io.hpp"
#include "exmod/weyl.hpp"

using namespace exmod;

namespace {

struct Options {
    int prime = 2;
    unsigned seed = 0;
    int degree_cap = 6;
    int rank_cap = 5;
    std::string out;
    std::string format = "json";
};

Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    int v = -1;
    for (char c : text) {
        if (isdigit(static_cast<unsigned char>(c))) {
            v = (v < 0 ? 0 : v * 10) + (c - '0');
        } else if (c == ',' || c == ']') {
            if (v >= 0) parts.push_back(v);
            v = -1;
        } else if (c != '[' && c != ' ') {
            throw std::invalid_argument("bad partition: " + text);
        }
    }
    if (v >= 0) parts.push_back(v);
    return Partition(parts);
}

void emit(const Options& opt, const json& report, const std::string& csv = "") {
    if (opt.format == "csv" && !csv.empty()) {
        if (opt.out.empty())
            std::cout << csv;
        else
            write_text_file(opt.out, csv);
        return;
    }
    if (opt.out.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_text_file(opt.out, report.dump(2) + "\n");
}

std::vector<long long> dims_of(const GradedModule& M, int d_max) {
    std::vector<long long> dims;
    for (const auto& ci : component_dimensions(M, d_max)) dims.push_back(ci.dim);
    return dims;
}

// named fixtures for experiment batches; the seeded items come from the corpus
std::vector<std::pair<std::string, EquivariantPresentation>> curated(int p) {
    return {{"max-ideal", corpus::max_ideal(p)},
            {"r-mod-m2", corpus::r_mod_m2(p)},
            {"r-mod-m3", corpus::r_mod_m3(p)},
            {"square-ideal", corpus::square_ideal(p)}};
}

int cmd_steinberg(const Options& opt, const std::string& lam) {
    Partition lambda = parse_partition(lam);
    if (lambda.size() > 8) throw std::invalid_argument("steinberg cap: |lambda| <= 8");
    auto rep = verify_steinberg(lambda, PrimeChar(opt.prime));
    json j{{"lambda", lambda.parts()}, {"ok", rep.ok}, {"lhs", rep.lhs.str()}, {"rhs", rep.rhs.str()}};
    j["layers"] = json::array();
    for (const auto& l : rep.layers) j["layers"].push_back(l.parts());
    std::cout << "layers:";
    for (const auto& l : rep.layers) std::cout << " " << l.str();
    std::cout << "\nverdict: " << (rep.ok ? "pass" : "FAIL") << "\n";
    if (!opt.out.empty()) emit(opt, j);
    return rep.ok ? 0 : 1;
}

int cmd_char(const Options& opt, const std::string& expr, int derive) {
    CharacterElement a = CharacterElement::parse(expr);
    for (int k = 0; k < derive; ++k) a = schur_derivative(a);
    std::cout << a.str() << "\n";
    if (!opt.out.empty()) emit(opt, json{{"input", expr}, {"derive", derive}, {"result", a.str()}});
    return 0;
}

int cmd_simple_char(const Options& opt, const std::string& lam) {
    Partition lambda = parse_partition(lam);
    auto s = gram_rank_character(lambda, PrimeChar(opt.prime), std::max(1, lambda.size()));
    std::cout << s.character.str() << "\n";
    if (!opt.out.empty())
        emit(opt, json{{"lambda", lambda.parts()}, {"prime", opt.prime}, {"character", s.character.str()}});
    return 0;
}

int cmd_decomp_matrix(const Options& opt, int d) {
    auto dm = decomposition_matrix(d, PrimeChar(opt.prime));
    json j{{"prime", opt.prime}, {"degree", d}};
    j["labels"] = json::array();
    for (const auto& l : dm.labels) j["labels"].push_back(l.parts());
    j["entries"] = dm.entries;
    std::ostringstream csv;
    csv << "row,col,value\n";
    for (std::size_t r = 0; r < dm.entries.size(); ++r) {
        for (std::size_t c = 0; c < dm.entries[r].size(); ++c) {
            std::cout << dm.entries[r][c] << (c + 1 < dm.entries[r].size() ? " " : "\n");
            if (dm.entries[r][c] != 0)
                csv << dm.labels[r].str() << "," << dm.labels[c].str() << "," << dm.entries[r][c] << "\n";
        }
    }
    emit(opt, j, csv.str());
    return 0;
}

int cmd_evaluate(const Options& opt, const std::string& file, int rank) {
    auto M = presentation_from_json(load_json_file(file));
    auto ev = evaluate(M, rank);
    auto dims = dims_of(ev.module, opt.degree_cap);
    auto semi = is_semi_induced(M, opt.degree_cap);
    json j{{"rank", rank}, {"dims", dims}, {"semi_induced", semi.semi_induced}};
    std::cout << "dims:";
    for (long long d : dims) std::cout << " " << d;
    std::cout << "\nsemi-induced: " << (semi.semi_induced ? "yes" : "no") << "\n";
    if (!opt.out.empty()) emit(opt, j);
    return 0;
}

int cmd_betti(const Options& opt, const std::string& file, int i_max) {
    auto M = presentation_from_json(load_json_file(file));
    auto eb = equivariant_betti(M, i_max, opt.degree_cap);
    json j{{"t", eb.t}, {"stabilized", eb.stabilized}, {"entries", betti_to_json(eb.table)}};
    for (int i = 0; i <= i_max; ++i) std::cout << "t" << i << " = " << eb.t[i] << "\n";
    emit(opt, j, betti_to_csv(eb.table));
    return 0;
}

int cmd_regularity(const Options& opt, const std::string& file) {
    auto M = presentation_from_json(load_json_file(file));
    auto rep = regularity_bound_check(M, 4, opt.degree_cap);
    std::cout << "reg = " << rep.reg << ", bound t0+t1 = " << rep.bound << ", "
              << (rep.ok ? "ok" : "VIOLATED") << "\n";
    if (!opt.out.empty()) emit(opt, regularity_to_json(rep));
    return rep.ok ? 0 : 1;
}

int cmd_shift(const Options& opt, const std::string& file, int l_max) {
    auto M = presentation_from_json(load_json_file(file));
    auto r = shift_theorem_experiment(M, l_max, opt.degree_cap);
    if (r.l_found)
        std::cout << "semi-induced after l = " << *r.l_found << " shifts\n";
    else
        std::cout << "inconclusive at l_max = " << l_max << "\n";
    if (!opt.out.empty()) emit(opt, shift_experiment_to_json(r));
    return 0;
}

int cmd_delta(const Options& opt, const std::string& file, int rank) {
    auto M = presentation_from_json(load_json_file(file));
    auto dims = dims_of(delta_evaluate(M, rank).module, opt.degree_cap);
    std::cout << "delta dims:";
    for (long long d : dims) std::cout << " " << d;
    std::cout << "\n";
    if (!opt.out.empty()) emit(opt, json{{"rank", rank}, {"dims", dims}});
    return 0;
}

int cmd_torsion(const Options& opt, const std::string& file, int rank, int s_max) {
    auto M = presentation_from_json(load_json_file(file));
    auto t = torsion_submodule(M, rank, s_max, opt.degree_cap);
    std::cout << "torsion classes: " << t.total << (t.inconclusive ? " (inconclusive)" : "") << "\n";
    for (const auto& c : t.classes)
        std::cout << "  degree " << c.degree << ": " << c.count << " classes, kill exponent "
                  << c.kill_exponent << "\n";
    if (!opt.out.empty()) emit(opt, torsion_to_json(t));
    return 0;
}

int cmd_groebner_member(const Options& opt, const std::string& file, const std::string& mono) {
    auto M = monomial_module_from_json(load_json_file(file));
    auto w = membership(parse_monomial(mono), M);
    json j{{"member", w.member}};
    if (w.member) {
        j["generator"] = M.gens[w.generator].str();
        j["sigma"] = w.sigma;
        j["wedge_factor"] = w.wedge_factor;
        std::cout << "member via generator " << M.gens[w.generator].str() << "\n";
    } else {
        std::cout << "not a member\n";
    }
    if (!opt.out.empty()) emit(opt, j);
    return 0;
}

// generator file: {"n", "prime", "elements": [[{"c": coeff, "m": "x1 | e1"}...]...]}
int cmd_groebner_init(const Options& opt, const std::string& file, int index_cap) {
    json j = load_json_file(file);
    int n = j.at("n").get<int>();
    int p = j.value("prime", opt.prime);
    std::vector<PModElement> gens;
    for (const auto& je : j.at("elements")) {
        PModElement e;
        for (const auto& jt : je)
            e[parse_monomial(jt.at("m").get<std::string>())] = jt.at("c").get<int>();
        gens.push_back(element_normalized(Fp(p), std::move(e)));
    }
    auto r = initial_module_truncated(gens, n, p, opt.degree_cap, index_cap);
    json out{{"truncated", r.truncated}, {"span_dim", r.span_dim}};
    out["generators"] = json::array();
    for (const auto& g : r.module.gens) {
        out["generators"].push_back(g.str());
        std::cout << g.str() << "\n";
    }
    if (!opt.out.empty()) emit(opt, out);
    return 0;
}

std::vector<std::vector<PModMonomial>> random_chain(std::mt19937& rng, int steps) {
    std::vector<std::vector<PModMonomial>> chain;
    for (int t = 0; t < steps; ++t) {
        std::vector<PModMonomial> s;
        int k = 1 + static_cast<int>(rng() % 2);
        for (int g = 0; g < k; ++g) {
            PModMonomial m;
            int wl = static_cast<int>(rng() % 3);
            std::set<int> w;
            while (static_cast<int>(w.size()) < wl) w.insert(1 + static_cast<int>(rng() % 6));
            m.wedge.assign(w.rbegin(), w.rend());
            m.tensor = {1 + static_cast<int>(rng() % 6)};
            s.push_back(std::move(m));
        }
        chain.push_back(std::move(s));
    }
    return chain;
}

int cmd_groebner_acc(const Options& opt, int trials, int step_cap) {
    std::mt19937 rng(opt.seed);
    json out = json::array();
    bool all_terminated = true;
    for (int t = 0; t < trials; ++t) {
        auto chain = random_chain(rng, step_cap);
        auto rep = acc_experiment([&](int s) { return chain[s - 1]; }, 1, step_cap);
        all_terminated = all_terminated && !rep.capped;
        out.push_back({{"trial", t},
                       {"stabilization_index", rep.stabilization_index},
                       {"capped", rep.capped},
                       {"new_gens_per_step", rep.new_gens_per_step}});
        std::cout << "trial " << t << ": stabilizes at step " << rep.stabilization_index
                  << (rep.capped ? " (capped)" : "") << "\n";
    }
    if (!opt.out.empty()) emit(opt, out);
    return all_terminated ? 0 : 1;
}

int cmd_corpus(const Options& opt, int count, const std::string& fixture) {
    if (!fixture.empty()) {
        EquivariantPresentation M = [&] {
            if (fixture == "ring") return corpus::ring(opt.prime);
            if (fixture == "point") return corpus::point(opt.prime);
            if (fixture == "max-ideal") return corpus::max_ideal(opt.prime);
            if (fixture == "r-mod-m2") return corpus::r_mod_m2(opt.prime);
            if (fixture == "r-mod-m3") return corpus::r_mod_m3(opt.prime);
            if (fixture == "square-ideal") return corpus::square_ideal(opt.prime);
            if (fixture == "twisted") return corpus::twisted(opt.prime);
            throw std::invalid_argument("unknown fixture: " + fixture);
        }();
        emit(opt, presentation_to_json(M));
        return 0;
    }
    auto items = corpus::seeded_corpus(opt.prime, count, opt.seed);
    json out = json::array();
    for (const auto& M : items) out.push_back(presentation_to_json(M));
    std::cout << "generated " << items.size() << " presentations\n";
    emit(opt, out);
    return 0;
}

int cmd_experiment(const Options& opt, const std::string& name) {
    json report{{"experiment", name}, {"prime", opt.prime}, {"seed", opt.seed}};
    json items = json::array();
    int violations = 0;
    auto record = [&](const std::string& id, const std::string& verdict, const std::string& repro) {
        json it{{"id", id}, {"verdict", verdict}};
        if (verdict == "fail") {
            it["repro"] = repro;
            ++violations;
        }
        items.push_back(std::move(it));
    };

    if (name == "steinberg-sweep") {
        for (int p : {2, 3})
            for (int d = 0; d <= 6; ++d)
                for (const auto& lam : partitions_of(d)) {
                    bool ok = verify_steinberg(lam, PrimeChar(p)).ok;
                    record("p=" + std::to_string(p) + " lambda=" + lam.str(),
                           ok ? "pass" : "fail",
                           "exmod steinberg '" + lam.str() + "' --prime " + std::to_string(p));
                }
    } else if (name == "shift-theorem") {
        for (const auto& [id, M] : curated(opt.prime)) {
            auto r = shift_theorem_experiment(M, 6, opt.degree_cap);
            record(id, r.l_found ? "pass" : "fail", "exmod experiment shift-theorem");
        }
        for (const auto& M : corpus::seeded_corpus(opt.prime, 10, opt.seed)) {
            auto r = shift_theorem_experiment(M, 6, opt.degree_cap);
            record("seeded", r.l_found ? "pass" : "inconclusive", "");
        }
    } else if (name == "resolution") {
        for (const auto& [id, M] : curated(opt.prime)) {
            auto r = resolution_experiment(M, opt.degree_cap);
            record(id, r.ok ? (r.inconclusive ? "inconclusive" : "pass") : "fail",
                   "exmod experiment resolution --prime " + std::to_string(opt.prime));
        }
    } else if (name == "reg-bound") {
        auto batch = curated(opt.prime);
        for (const auto& M : corpus::seeded_corpus(opt.prime, 10, opt.seed))
            batch.push_back({"seeded", M});
        for (const auto& [id, M] : batch) {
            auto r = regularity_bound_check(M, 4, opt.degree_cap);
            record(id, r.ok ? "pass" : "fail",
                   "exmod experiment reg-bound --prime " + std::to_string(opt.prime) + " --seed " +
                       std::to_string(opt.seed));
        }
    } else if (name == "torsion") {
        bool r_empty = torsion_submodule(corpus::ring(opt.prime), 4, 3, opt.degree_cap).total == 0;
        record("ring-torsion-free", r_empty ? "pass" : "fail", "exmod experiment torsion");
        auto t = torsion_submodule(corpus::r_mod_m2(opt.prime), 3, 3, 4);
        bool all2 = !t.inconclusive && t.degrees_stable;
        for (const auto& c : t.classes) all2 = all2 && c.kill_exponent <= 2;
        record("r-mod-m2-kill-exponent", all2 ? "pass" : "fail", "exmod experiment torsion");
        for (const auto& M : corpus::seeded_corpus(opt.prime, 10, opt.seed)) {
            auto tr = torsion_submodule(M, M.support_width + 1, 3, opt.degree_cap);
            record("seeded", tr.degrees_stable || tr.total == 0 ? "pass" : "fail",
                   "exmod experiment torsion --prime " + std::to_string(opt.prime) + " --seed " +
                       std::to_string(opt.seed));
        }
    } else if (name == "acc") {
        std::mt19937 rng(opt.seed);
        for (int t = 0; t < 10; ++t) {
            auto chain = random_chain(rng, 8);
            auto rep = acc_experiment([&](int s) { return chain[s - 1]; }, 1, 8);
            record("chain-" + std::to_string(t), rep.capped ? "fail" : "pass",
                   "exmod groebner acc --seed " + std::to_string(opt.seed));
        }
    } else if (name == "wedge-lengths") {
        for (int n = 0; n <= 1; ++n) {
            auto rep = wedge_tensor_length_report(n, 8, PrimeChar(2));
            json it{{"id", "n=" + std::to_string(n)}, {"verdict", "report"}, {"lengths", rep.lengths}};
            if (rep.detected_period) it["detected_period"] = *rep.detected_period;
            items.push_back(std::move(it));
        }
    } else {
        throw std::invalid_argument("unknown experiment: " + name);
    }

    report["items"] = items;
    report["violations"] = violations;
    std::ostringstream csv;
    csv << "id,verdict\n";
    for (const auto& it : items)
        csv << it.at("id").get<std::string>() << "," << it.at("verdict").get<std::string>() << "\n";
    emit(opt, report, csv.str());
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exterior-algebra module workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Options opt;
    app.add_option("--prime", opt.prime, "coefficient characteristic");
    app.add_option("--seed", opt.seed, "corpus seed");
    app.add_option("--degree-cap", opt.degree_cap, "internal degree cap");
    app.add_option("--rank-cap", opt.rank_cap, "evaluation rank cap");
    app.add_option("--out", opt.out, "report output file");
    app.add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string lam, expr, file, mono, name;
    int derive = 0, degree = 2, rank = 3, i_max = 3, l_max = 6, s_max = 3;
    int index_cap = 4, trials = 5, step_cap = 8, count = 10;

    auto* c_st = app.add_subcommand("steinberg", "factor a simple character into twisted layers");
    c_st->add_option("lambda", lam)->required();
    auto* c_ch = app.add_subcommand("char", "parse and optionally differentiate a character");
    c_ch->add_option("expr", expr)->required();
    c_ch->add_option("--derive", derive, "apply the Schur derivative this many times");
    auto* c_sc = app.add_subcommand("simple-char", "simple character by Gram ranks");
    c_sc->add_option("lambda", lam)->required();
    auto* c_dm = app.add_subcommand("decomp-matrix", "decomposition matrix in one degree");
    c_dm->add_option("degree", degree)->required();
    auto* c_ev = app.add_subcommand("evaluate", "rank evaluation of a presentation");
    c_ev->add_option("file", file)->required();
    c_ev->add_option("--rank", rank);
    auto* c_bt = app.add_subcommand("betti", "rank-stable Betti data of a presentation");
    c_bt->add_option("file", file)->required();
    c_bt->add_option("--i-max", i_max);
    auto* c_rg = app.add_subcommand("regularity", "regularity against the t0+t1 bound");
    c_rg->add_option("file", file)->required();
    auto* c_sh = app.add_subcommand("shift", "iterate the shift functor until semi-induced");
    c_sh->add_option("file", file)->required();
    c_sh->add_option("--l-max", l_max);
    auto* c_dl = app.add_subcommand("delta", "difference functor evaluation");
    c_dl->add_option("file", file)->required();
    c_dl->add_option("--rank", rank);
    auto* c_to = app.add_subcommand("torsion", "torsion submodule by the wedge-kill test");
    c_to->add_option("file", file)->required();
    c_to->add_option("--rank", rank);
    c_to->add_option("--s-max", s_max);
    auto* c_gr = app.add_subcommand("groebner", "monomial module utilities");
    c_gr->require_subcommand(1);
    auto* c_gm = c_gr->add_subcommand("member", "equivariant membership with witness");
    c_gm->add_option("--module", file)->required();
    c_gm->add_option("--monomial", mono)->required();
    auto* c_gi = c_gr->add_subcommand("init", "truncated initial module");
    c_gi->add_option("--gens", file)->required();
    c_gi->add_option("--index-cap", index_cap);
    auto* c_ga = c_gr->add_subcommand("acc", "ascending chain stabilization");
    c_ga->add_option("--trials", trials);
    c_ga->add_option("--step-cap", step_cap);
    auto* c_ex = app.add_subcommand("experiment", "named experiment batch");
    c_ex->add_option("name", name)->required();
    auto* c_co = app.add_subcommand("corpus", "deterministic seeded corpus");
    c_co->add_option("--count", count);
    std::string fixture;
    c_co->add_option("--fixture", fixture, "emit one named presentation");

    try {
        app.parse(argc, argv);
        if (c_st->parsed()) return cmd_steinberg(opt, lam);
        if (c_ch->parsed()) return cmd_char(opt, expr, derive);
        if (c_sc->parsed()) return cmd_simple_char(opt, lam);
        if (c_dm->parsed()) return cmd_decomp_matrix(opt, degree);
        if (c_ev->parsed()) return cmd_evaluate(opt, file, rank);
        if (c_bt->parsed()) return cmd_betti(opt, file, i_max);
        if (c_rg->parsed()) return cmd_regularity(opt, file);
        if (c_sh->parsed()) return cmd_shift(opt, file, l_max);
        if (c_dl->parsed()) return cmd_delta(opt, file, rank);
        if (c_to->parsed()) return cmd_torsion(opt, file, rank, s_max);
        if (c_gm->parsed()) return cmd_groebner_member(opt, file, mono);
        if (c_gi->parsed()) return cmd_groebner_init(opt, file, index_cap);
        if (c_ga->parsed()) return cmd_groebner_acc(opt, trials, step_cap);
        if (c_ex->parsed()) return cmd_experiment(opt, name);
        if (c_co->parsed()) return cmd_corpus(opt, count, fixture);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // domain/logic errors signal a violated invariant, not bad input
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    }
}
