// quiversi: compute with semi-invariants of acyclic quivers.
//
// Subcommands: validate, paths, matrix, semistable, nullcone, ray-weight,
// bounds, polarize, family. All randomized commands echo the seed; exit
// codes are 0 (success / positive verdict), 2 (negative or probabilistic
// verdict, failed verification), 1 (usage or input error).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "quiversi/json_io.hpp"
#include "quiversi/version.hpp"

namespace {

using namespace quiversi;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
}

json parse_inline(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("invalid JSON for " + what + ": " + e.what());
    }
}

void emit(const json& payload) { std::cout << document(payload).dump(2) << "\n"; }

std::string weight_text(const Weight& w) {
    std::string out = "{";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ", ";
        out += w.vertex(i) + ": " + w.value(i).get_str();
    }
    return out + "}";
}

void print_verdict_text(const Verdict& v, bool null_cone) {
    std::cout << "decision: " << to_string(v.decision) << "\n";
    std::cout << "seed: " << v.seed << "\n";
    std::cout << "trials: " << v.trials << " (used " << v.trials_used << ")\n";
    if (null_cone) std::cout << "weights tested: " << v.weights_tested << "\n";
    std::cout << "failure probability bound: " << to_string(v.failure_probability_bound)
              << (v.exact ? " (exact)" : "") << "\n";
    if (v.certificate) {
        std::cout << "certificate: weight " << weight_text(v.certificate->sigma)
                  << ", d = " << v.certificate->d.get_str() << ", det = "
                  << to_string(v.certificate->det_value) << "\n";
        std::cout << "certificate t:";
        for (const Int& x : v.certificate->t) std::cout << " " << x.get_str();
        std::cout << "\n";
    }
}

int verdict_exit(const Verdict& v) {
    return (v.decision == Decision::Semistable || v.decision == Decision::NotInNullCone) ? 0 : 2;
}

int run_validate(const std::string& quiver_path, bool as_json) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    if (as_json) {
        emit(json{{"topological_order", q.topological_order()}});
    } else {
        std::cout << "valid acyclic quiver with " << q.vertex_count() << " vertices, "
                  << q.arrows().size() << " arrows\n";
        std::cout << "topological order:";
        for (const auto& v : q.topological_order()) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

int run_paths(const std::string& quiver_path, const std::string& from, const std::string& to,
              bool as_json) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    if (from.empty() != to.empty())
        throw ArgumentError("--from and --to must be given together");
    if (!from.empty()) {
        auto paths = enumerate_paths(q, from, to);
        if (as_json) {
            json list = json::array();
            for (const auto& p : paths) list.push_back(p.arrows);
            emit(json{{"from", from}, {"to", to}, {"paths", list}, {"count", paths.size()}});
        } else {
            std::cout << paths.size() << " path(s) from " << from << " to " << to << "\n";
            for (const auto& p : paths) {
                for (std::size_t i = 0; i < p.arrows.size(); ++i)
                    std::cout << (i ? " " : "  ") << p.arrows[i];
                std::cout << "\n";
            }
        }
        return 0;
    }
    auto counts = path_counts(q);
    if (as_json) {
        json rows = json::array();
        for (std::size_t x = 0; x < q.vertex_count(); ++x) {
            json row = json::array();
            for (std::size_t y = 0; y < q.vertex_count(); ++y)
                row.push_back(int_to_json(counts.at(x, y)));
            rows.push_back(std::move(row));
        }
        emit(json{{"order", counts.order}, {"counts", rows}});
    } else {
        std::cout << "path counts (rows = source, in input vertex order):\n";
        for (std::size_t x = 0; x < q.vertex_count(); ++x) {
            std::cout << "  " << counts.order[x] << ":";
            for (std::size_t y = 0; y < q.vertex_count(); ++y)
                std::cout << " " << counts.at(x, y).get_str();
            std::cout << "\n";
        }
    }
    return 0;
}

int run_matrix(const std::string& quiver_path, const std::string& alpha_text,
               const std::string& sigma_text, const std::string& rep_path, bool as_json) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    DimVector alpha = parse_dim_vector(parse_inline(alpha_text, "--alpha"), q);
    Weight sigma = parse_weight(parse_inline(sigma_text, "--sigma"), q);
    LinearMatrix m = build_linear_matrix(q, alpha, sigma);

    json payload = linear_matrix_to_json(m);
    payload["sigma_norm"] = int_to_json(sigma_norm(sigma, alpha));
    std::optional<InstantiatedPencil> pencil;
    if (!rep_path.empty()) {
        Representation rep = parse_representation(load_json_file(rep_path));
        pencil = instantiate(m, rep);
        payload["pencil"] = pencil_to_json(*pencil);
    }
    if (as_json) {
        emit(payload);
        return 0;
    }
    std::cout << "size: " << m.size() << " x " << m.size() << "\n";
    std::cout << "indeterminates: " << m.indet_count() << "\n";
    std::cout << "|sigma|_alpha: " << sigma_norm(sigma, alpha).get_str() << "\n";
    for (std::size_t r = 0; r < m.row_slots().size(); ++r)
        for (std::size_t c = 0; c < m.col_slots().size(); ++c) {
            const auto& entries = m.block(r, c);
            if (entries.empty()) continue;
            const Slot& rs = m.row_slots()[r];
            const Slot& cs = m.col_slots()[c];
            std::cout << "block (" << rs.vertex << "#" << rs.copy << " <- " << cs.vertex << "#"
                      << cs.copy << "):";
            for (std::size_t i = 0; i < entries.size(); ++i) {
                std::cout << (i ? " + t" : " t") << entries[i].indet << "*[";
                for (std::size_t k = 0; k < entries[i].path.arrows.size(); ++k)
                    std::cout << (k ? " " : "") << entries[i].path.arrows[k];
                std::cout << "]";
            }
            std::cout << "\n";
        }
    if (pencil) {
        std::cout << "pencil terms: " << pencil->indet_count()
                  << (pencil->is_structurally_zero() ? " (all zero)" : "") << "\n";
    }
    return 0;
}

int run_semistable(const std::string& rep_path, const std::string& sigma_text, long trials,
                   std::uint64_t seed, bool as_json) {
    Representation rep = parse_representation(load_json_file(rep_path));
    Weight sigma = parse_weight(parse_inline(sigma_text, "--sigma"), rep.quiver());
    Verdict v = is_semistable(rep, sigma, trials, seed);
    if (as_json)
        emit(verdict_to_json(v));
    else
        print_verdict_text(v, false);
    return verdict_exit(v);
}

int run_nullcone(const std::string& rep_path, long max_coord, long trials, std::uint64_t seed,
                 bool as_json) {
    Representation rep = parse_representation(load_json_file(rep_path));
    Verdict v = null_cone_membership(rep, Int(max_coord), trials, seed);
    if (as_json)
        emit(verdict_to_json(v, true));
    else
        print_verdict_text(v, true);
    return verdict_exit(v);
}

int run_ray_weight(const std::string& quiver_path, const std::string& alpha_text,
                   const std::string& betas_text, bool as_json) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    DimVector alpha = parse_dim_vector(parse_inline(alpha_text, "--alpha"), q);
    json bj = parse_inline(betas_text, "--betas");
    if (!bj.is_array()) throw SchemaError("--betas must be a JSON array of dimension vectors");
    std::vector<DimVector> betas;
    for (std::size_t i = 0; i < bj.size(); ++i)
        betas.push_back(parse_dim_vector(bj[i], q, "/betas/" + std::to_string(i)));
    RayWeightResult r = ray_weight(alpha, betas);
    if (as_json) {
        emit(ray_weight_to_json(r, alpha));
    } else {
        std::cout << "rank_ok: " << (r.rank_ok ? "true" : "false") << "\n";
        std::cout << "weight: " << weight_text(r.weight) << "\n";
        std::cout << "coordinate bound: " << to_string(r.coordinate_bound) << "\n";
        std::cout << "|sigma|_alpha bound: " << to_string(r.sigma_norm_bound) << "\n";
        if (r.rank_ok && weight_apply(r.weight, alpha) == 0)
            std::cout << "|sigma|_alpha: " << sigma_norm(r.weight, alpha).get_str() << "\n";
        else
            std::cout << "|sigma|_alpha: undefined (weight . alpha != 0)\n";
    }
    return r.rank_ok ? 0 : 2;
}

int run_bounds(const std::string& quiver_path, const std::string& alpha_text,
               std::optional<long> r_override, bool as_json) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    DimVector alpha = parse_dim_vector(parse_inline(alpha_text, "--alpha"), q);
    std::optional<Int> r;
    if (r_override) r = Int(*r_override);
    BoundsReport report = bounds_report(q, alpha, r);
    if (as_json) {
        emit(bounds_to_json(report));
        return 0;
    }
    auto line = [](const std::string& name, const std::string& value) {
        std::cout << "  " << name;
        for (std::size_t i = name.size(); i < 28; ++i) std::cout << ' ';
        std::cout << value << "\n";
    };
    std::cout << "bounds for n = " << report.n << ", ||alpha||_1 = " << report.l1.get_str()
              << ", ||alpha||_2^2 = " << report.l2sq.get_str()
              << (report.degenerate ? " (degenerate)" : "") << "\n";
    auto rat_line = [&](const std::string& name, const Rat& v) {
        line(name, to_string(v) + "  (ceil " + ceil_to_int(v).get_str() + ")");
    };
    rat_line("null cone weight bound", report.null_cone_weight_bound);
    rat_line("gamma bound", report.gamma_bound);
    line("dim Rep(Q, alpha)", report.dim_rep.get_str());
    rat_line("r cap", report.r_cap);
    line("r used", report.r_used.get_str());
    rat_line("main bound", report.main_bound);
    rat_line("independent bound", report.independent_bound);
    return 0;
}

int run_polarize(const std::string& quiver_path, const std::string& alpha_text) {
    Quiver q = parse_quiver(load_json_file(quiver_path));
    DimVector alpha = parse_dim_vector(parse_inline(alpha_text, "--alpha"), q);
    emit(quiver_to_json(polarize(q, alpha)));
    return 0;
}

int run_family_qn(long n, bool verify, bool semistable, long trials, std::uint64_t seed,
                  bool as_json) {
    QnBundle bundle = build_qn_bundle(n);
    json payload = qn_bundle_to_json(bundle);
    payload["n"] = n;
    if (!verify) {
        emit(payload);
        return 0;
    }
    QnReport report = verify_qn(n, trials, seed, semistable);
    if (as_json) {
        json vj = qn_report_to_json(report);
        vj["trials"] = trials;
        vj["seed"] = seed;
        payload["verify"] = std::move(vj);
        emit(payload);
    } else {
        emit(payload);
        std::cout << "verify (trials " << trials << ", seed " << seed << "):\n";
        for (const auto& c : report.checks)
            std::cout << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": "
                      << c.detail << "\n";
    }
    return report.all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quiversi: semi-invariants of quivers with no oriented cycles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("quiversi ") + quiversi::kToolVersion +
                                          " (schema " + quiversi::kSchemaVersion + ")");

    std::string quiver_path, rep_path, alpha_text, sigma_text, betas_text, from, to;
    long trials = 8, max_coord = 0, n = 3;
    std::optional<long> r_override;
    std::uint64_t seed = 0;
    bool as_json = false, verify = false, semistable_check = false;

    auto* validate = app.add_subcommand("validate", "validate a quiver and print its topological order");
    validate->add_option("quiver", quiver_path, "quiver JSON file")->required();
    validate->add_flag("--json", as_json, "machine-readable output");

    auto* paths = app.add_subcommand("paths", "enumerate paths or print the path-count matrix");
    paths->add_option("quiver", quiver_path)->required();
    paths->add_option("--from", from, "source vertex");
    paths->add_option("--to", to, "target vertex");
    paths->add_flag("--json", as_json);

    auto* matrix = app.add_subcommand("matrix", "build the determinantal block matrix for (Q, alpha, sigma)");
    matrix->add_option("quiver", quiver_path)->required();
    matrix->add_option("--alpha", alpha_text, "dimension vector JSON")->required();
    matrix->add_option("--sigma", sigma_text, "weight JSON")->required();
    matrix->add_option("--rep", rep_path, "representation JSON file: also emit the instantiated pencil");
    matrix->add_flag("--json", as_json);

    auto* semistable = app.add_subcommand("semistable", "randomized sigma-semistability test");
    semistable->add_option("rep", rep_path, "representation JSON file")->required();
    semistable->add_option("--sigma", sigma_text, "weight JSON")->required();
    semistable->add_option("--trials", trials, "PIT trials per weight")->capture_default_str();
    semistable->add_option("--seed", seed, "RNG seed")->capture_default_str();
    semistable->add_flag("--json", as_json);

    auto* nullcone = app.add_subcommand("nullcone", "search for a semistability certificate over the weight box");
    nullcone->add_option("rep", rep_path)->required();
    nullcone->add_option("--max-coord", max_coord, "weight coordinate cap")->required();
    nullcone->add_option("--trials", trials)->capture_default_str();
    nullcone->add_option("--seed", seed)->capture_default_str();
    nullcone->add_flag("--json", as_json);

    auto* rayweight = app.add_subcommand("ray-weight", "minimal integral weight on the line cut by n-1 dimension vectors");
    rayweight->add_option("quiver", quiver_path)->required();
    rayweight->add_option("--alpha", alpha_text)->required();
    rayweight->add_option("--betas", betas_text, "JSON array of dimension vectors")->required();
    rayweight->add_flag("--json", as_json);

    auto* bounds = app.add_subcommand("bounds", "evaluate every closed-form degree bound exactly");
    bounds->add_option("quiver", quiver_path)->required();
    bounds->add_option("--alpha", alpha_text)->required();
    bounds->add_option("--r", r_override, "override the Krull-dimension cap");
    bounds->add_flag("--json", as_json);

    auto* polarize_cmd = app.add_subcommand("polarize", "emit the Weyl polarization quiver");
    polarize_cmd->add_option("quiver", quiver_path)->required();
    polarize_cmd->add_option("--alpha", alpha_text)->required();
    polarize_cmd->add_flag("--json", as_json, "output is always JSON");

    auto* family = app.add_subcommand("family", "constructors for the built-in example families");
    auto* family_qn = family->add_subcommand("qn", "the exponential lower-bound family");
    family_qn->add_option("--n", n, "number of vertices (>= 3)")->required();
    family_qn->add_flag("--verify", verify, "run the verification checks");
    family_qn->add_flag("--semistable", semistable_check,
                        "include the randomized semistability check (small n only)");
    family_qn->add_option("--trials", trials)->capture_default_str();
    family_qn->add_option("--seed", seed)->capture_default_str();
    family_qn->add_flag("--json", as_json);
    family->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return run_validate(quiver_path, as_json);
        if (*paths) return run_paths(quiver_path, from, to, as_json);
        if (*matrix) return run_matrix(quiver_path, alpha_text, sigma_text, rep_path, as_json);
        if (*semistable) return run_semistable(rep_path, sigma_text, trials, seed, as_json);
        if (*nullcone) return run_nullcone(rep_path, max_coord, trials, seed, as_json);
        if (*rayweight) return run_ray_weight(quiver_path, alpha_text, betas_text, as_json);
        if (*bounds) return run_bounds(quiver_path, alpha_text, r_override, as_json);
        if (*polarize_cmd) return run_polarize(quiver_path, alpha_text);
        if (*family_qn) return run_family_qn(n, verify, semistable_check, trials, seed, as_json);
    } catch (const quiversi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
