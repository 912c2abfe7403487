// Command-line surface for the delta-function toolkit. Every subcommand
// emits canonical JSON on stdout (text/csv renderings derive from it), and
// every emitted construction or witness is re-loaded from its own JSON and
// re-verified before the process reports success.
//
// Exit codes: 0 success, 2 precondition violation, 3 budget exceeded,
// 4 internal verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "deltaspec/fixtures.hpp"
#include "deltaspec/json_io.hpp"

using namespace deltaspec;

namespace {

std::uint64_t env_budget(std::uint64_t fallback) {
    const char* s = std::getenv("DELTASPEC_BUDGET");
    if (!s || !*s) return fallback;
    try {
        return std::stoull(s);
    } catch (...) {
        throw PreconditionError("DELTASPEC_BUDGET is not a valid integer");
    }
}

std::vector<std::uint32_t> parse_moduli(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(static_cast<std::uint32_t>(std::stoul(csv.substr(pos, next - pos))));
        pos = next + 1;
    }
    if (out.empty()) throw PreconditionError("empty moduli list");
    return out;
}

PointSetKind parse_set_kind(const std::string& name) {
    if (name == "hypercube") return PointSetKind::hypercube;
    if (name == "pm_cube" || name == "pm") return PointSetKind::pm_cube;
    if (name == "full") return PointSetKind::full;
    throw PreconditionError("unknown point set '" + name + "'");
}

void emit(const Json& j, const std::string& format, const std::string& out_path) {
    std::string text;
    if (format == "json") {
        text = j.dump();
    } else if (format == "text") {
        text = j.dump(2);
    } else {
        throw PreconditionError("unsupported format '" + format + "' for this command");
    }
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
}

// Re-load a spectrum from its own JSON and re-verify the delta property.
template <class F>
bool reload_and_verify(const F& field, const Json& spectrum_json, PointSetKind kind) {
    auto s = spectrum_from_json(field, spectrum_json);
    auto dense = inverse(field, s);
    return is_delta_on(field, dense, point_set(s.spec, kind));
}

template <class F>
Json construct_json(const F& field, const std::string& method, const GroupSpec& spec,
                    const std::vector<std::uint32_t>& block_sizes) {
    Spectrum<F> s{spec, {}};
    const std::uint32_t m = spec.moduli()[0];
    for (std::uint32_t mi : spec.moduli())
        if (mi != m) throw PreconditionError("construct: moduli must be equal for this method");
    Json j;
    if (method == "single") {
        s = single_block(field, m, static_cast<std::uint32_t>(spec.rank()));
    } else if (method == "partition") {
        if (block_sizes.empty())
            throw PreconditionError("construct: --blocks required for the partition method");
        std::vector<std::vector<std::uint32_t>> blocks;
        std::uint32_t next = 0;
        for (std::uint32_t sz : block_sizes) {
            std::vector<std::uint32_t> blk;
            for (std::uint32_t i = 0; i < sz; ++i) blk.push_back(next++);
            blocks.push_back(std::move(blk));
        }
        if (next != spec.rank())
            throw PreconditionError("construct: block sizes must sum to the coordinate count");
        s = partitioned(field, m, blocks);
        // Over a prime modulus the partition realizes a hyperplane cover of
        // the punctured Boolean cube; surface it alongside the spectrum.
        if (is_prime_u64(m)) {
            auto classes = covering_from_partitioned(spec, blocks);
            j["hyperplane_classes"] = hyperplanes_to_json(classes);
            j["cover_verified"] = verify_cover(classes);
            j["cover_bound_ok"] = covering_bound_check(classes);
        }
    } else {
        throw PreconditionError("construct: method must be 'single' or 'partition'");
    }
    j["spectrum"] = spectrum_to_json(field, s);
    j["sparsity"] = s.sparsity();
    const bool ok = reload_and_verify(field, j["spectrum"], PointSetKind::hypercube);
    if (!ok) throw VerificationError("construct: emitted spectrum failed re-verification");
    j["verified"] = ok;
    return j;
}

template <class F>
Json construct_with_identity(const F& field, const std::string& method, const GroupSpec& spec,
                             const std::vector<std::uint32_t>& block_sizes, std::uint64_t seed) {
    Json j = construct_json(field, method, spec, block_sizes);
    auto s = spectrum_from_json(field, j["spectrum"]);
    j["identity_check"] = delta_identity_check(field, s, 50, seed);
    return j;
}

template <class F>
Json search_json(const F& field, const SearchProblem& prob, unsigned workers,
                 const std::string& progress_out) {
    auto res = min_sparsity(field, prob, workers);
    Json j = search_result_to_json(field, res);
    if (res.status == SearchStatus::found) {
        if (!reload_and_verify(field, j["witness"], prob.B.kind))
            throw VerificationError("search: emitted witness failed re-verification");
    }
    if (res.status == SearchStatus::aborted && !progress_out.empty()) {
        Json p;
        p["problem"] = Json{{"moduli", prob.spec.moduli()},
                            {"field", field_to_json(FieldVariant(field))},
                            {"t_min", prob.t_min},
                            {"t_max", prob.t_max}};
        p["t"] = res.progress->t;
        p["last_rank"] = res.progress->last_rank;
        std::ofstream f(progress_out);
        f << p.dump() << "\n";
    }
    if (res.status == SearchStatus::aborted)
        throw BudgetExceeded("search aborted: feasibility budget exhausted");
    return j;
}

struct CommonSearchOpts {
    std::string moduli;
    std::string set_kind = "hypercube";
    std::string backend = "cyclo";
    std::uint64_t p_override = 0;
    std::uint64_t t_min = 1, t_max = 0;
    unsigned workers = 1;
    std::uint64_t budget = 0;
    bool no_perms = false;
    int galois = -1;  // -1 default, 0 off, 1 on
    std::string progress_out;
    std::string resume_path;
};

int run_search_command(const CommonSearchOpts& o, const std::string& format,
                       const std::string& out_path) {
    GroupSpec spec(parse_moduli(o.moduli));
    SearchProblem prob{.spec = spec, .B = point_set(spec, parse_set_kind(o.set_kind))};
    prob.t_min = o.t_min;
    prob.t_max = o.t_max;
    prob.prune_permutations = !o.no_perms;
    if (o.galois >= 0) prob.prune_galois = (o.galois != 0);
    prob.budget = env_budget(o.budget ? o.budget : 100000000);
    if (!o.resume_path.empty()) {
        std::ifstream f(o.resume_path);
        if (!f) throw PreconditionError("cannot open resume file");
        Json p = Json::parse(f);
        prob.resume_t = p.at("t").get<std::uint64_t>();
        prob.resume_rank = p.at("last_rank").get<std::uint64_t>();
    }
    FieldVariant fv = make_field(o.backend, spec.exponent(),
                                 o.p_override ? std::optional<std::uint64_t>(o.p_override)
                                              : std::nullopt);
    Json j = std::visit(
        [&](const auto& field) -> Json {
            using T = std::decay_t<decltype(field)>;
            if constexpr (T::exact) {
                return search_json(field, prob, o.workers, o.progress_out);
            } else {
                throw PreconditionError(
                    "search: the complex backend is not certificate-grade; use fp or cyclo");
            }
        },
        fv);
    emit(j, format, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deltaspec: Fourier-sparse delta functions on products of cyclic groups"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "Output format: json|text|csv")->capture_default_str();
    app.add_option("--out", out_path, "Write output to a file instead of stdout");
    app.add_option("--seed", seed, "Seed for randomized property trials")->capture_default_str();

    // bounds
    std::string bounds_moduli;
    std::uint64_t sweep_order = 0;
    auto* cmd_bounds = app.add_subcommand("bounds", "Lower/upper sparsity bounds for a group");
    cmd_bounds->add_option("--moduli", bounds_moduli, "Comma-separated moduli, e.g. 3,3,3")
        ->required();
    cmd_bounds->add_option("--sweep-order", sweep_order,
                           "Also report every multiset with order <= this cap (csv)");

    // construct
    std::string cons_moduli, cons_method = "single", cons_backend = "fp", cons_blocks;
    auto* cmd_construct = app.add_subcommand("construct", "Explicit delta constructions");
    cmd_construct->add_option("--moduli", cons_moduli)->required();
    cmd_construct->add_option("--method", cons_method, "single|partition");
    cmd_construct->add_option("--blocks", cons_blocks, "Partition block sizes, e.g. 2,2");
    cmd_construct->add_option("--backend", cons_backend, "fp|cyclo");

    // search
    CommonSearchOpts so;
    auto* cmd_search = app.add_subcommand("search", "Minimal-sparsity oracle");
    cmd_search->add_option("--moduli", so.moduli)->required();
    cmd_search->add_option("--set", so.set_kind, "hypercube|pm_cube|full");
    cmd_search->add_option("--backend", so.backend, "fp|cyclo");
    cmd_search->add_option("--p", so.p_override, "Override the prime for the fp backend");
    cmd_search->add_option("--min-t", so.t_min);
    cmd_search->add_option("--max-t", so.t_max);
    cmd_search->add_option("--workers", so.workers);
    cmd_search->add_option("--budget", so.budget, "Feasibility-test budget");
    cmd_search->add_flag("--no-prune-perms", so.no_perms);
    cmd_search->add_option("--galois", so.galois, "Force Galois scaling pruning on (1) or off (0)");
    cmd_search->add_option("--progress-out", so.progress_out, "Progress file on budget abort");
    cmd_search->add_option("--resume", so.resume_path, "Resume from a progress file");

    // covering
    std::string cov_moduli;
    std::uint64_t cov_cap = 4096, cov_nodes = 20000000;
    auto* cmd_covering = app.add_subcommand("covering", "Exact covering number F(m_1,...,m_r)");
    cmd_covering->add_option("--moduli", cov_moduli)->required();
    cmd_covering->add_option("--cap", cov_cap, "Group order cap");
    cmd_covering->add_option("--nodes", cov_nodes, "Branch-and-bound node budget");

    // decode
    auto* cmd_decode = app.add_subcommand("decode", "Canonical sets and S-decoding polynomials");
    cmd_decode->require_subcommand(1);
    std::uint64_t dec_m = 0;
    std::string dec_backend = "fp", dec_file;
    std::uint64_t dec_tmax = 0;
    unsigned dec_workers = 1;
    auto* dec_canonical = cmd_decode->add_subcommand("canonical", "Idempotents of Z_m");
    dec_canonical->add_option("--m", dec_m)->required();
    auto* dec_trivial = cmd_decode->add_subcommand("trivial", "Interpolation decoding polynomial");
    dec_trivial->add_option("--m", dec_m)->required();
    dec_trivial->add_option("--backend", dec_backend, "fp|cyclo");
    auto* dec_verify = cmd_decode->add_subcommand("verify", "Verify a polynomial JSON file");
    dec_verify->add_option("--file", dec_file)->required();
    auto* dec_convert = cmd_decode->add_subcommand("convert", "Polynomial <-> CRT spectrum");
    dec_convert->add_option("--file", dec_file)->required();
    auto* dec_min = cmd_decode->add_subcommand("min-sparsity", "Minimal decoding sparsity");
    dec_min->add_option("--m", dec_m)->required();
    dec_min->add_option("--backend", dec_backend, "fp|cyclo");
    dec_min->add_option("--max-t", dec_tmax);
    dec_min->add_option("--workers", dec_workers);

    // mobius
    std::uint32_t mob_m1 = 0, mob_m2 = 0;
    std::uint64_t mob_trials = 200;
    auto* cmd_mobius =
        app.add_subcommand("mobius", "Coprime two-coordinate sparsity-4 verification");
    cmd_mobius->add_option("--m1", mob_m1)->required();
    cmd_mobius->add_option("--m2", mob_m2)->required();
    cmd_mobius->add_option("--trials", mob_trials, "Random multilinear triples to test");

    // pir
    std::uint32_t pir_r = 0;
    double pir_n = 0;
    std::int64_t pir_t = -1;
    auto* cmd_pir = app.add_subcommand("pir", "Matching-vector PIR parameter shapes");
    cmd_pir->add_option("--r", pir_r)->required();
    cmd_pir->add_option("--n", pir_n, "Database size")->required();
    cmd_pir->add_option("--t", pir_t, "Server count");

    // fixtures
    auto* cmd_fixtures = app.add_subcommand("fixtures", "Deterministic fixture batteries");
    unsigned fix_workers = 1;
    std::string fix_check;
    auto* fix_run = cmd_fixtures->add_subcommand("run", "Run the fixture battery");
    fix_run->add_option("--workers", fix_workers, "Search worker count");
    fix_run->add_option("--check", fix_check,
                        "Compare against a stored battery file; nonzero exit on drift");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_bounds) {
            GroupSpec spec(parse_moduli(bounds_moduli));
            if (format == "csv") {
                std::string csv = "moduli;linear;product;covering;max_lower\n";
                auto row = [&](const GroupSpec& s) {
                    auto rep = lower_bounds(s);
                    std::string mods;
                    for (std::size_t i = 0; i < s.moduli().size(); ++i)
                        mods += (i ? "," : "") + std::to_string(s.moduli()[i]);
                    csv += mods + ";" + std::to_string(rep.linear_bound) + ";" +
                           std::to_string(rep.product_bound) + ";" +
                           std::to_string(rep.covering_bound) + ";" +
                           std::to_string(rep.max_lower()) + "\n";
                };
                row(spec);
                if (sweep_order >= 2) {
                    std::vector<std::vector<std::uint32_t>> grid;
                    std::vector<std::uint32_t> cur;
                    std::function<void(std::uint32_t, std::uint64_t)> rec =
                        [&](std::uint32_t min_m, std::uint64_t order) {
                            if (!cur.empty()) grid.push_back(cur);
                            for (std::uint32_t m = min_m; order * m <= sweep_order; ++m) {
                                cur.push_back(m);
                                rec(m, order * m);
                                cur.pop_back();
                            }
                        };
                    rec(2, 1);
                    for (const auto& mods : grid) row(GroupSpec(mods));
                }
                if (out_path.empty())
                    std::cout << csv;
                else
                    std::ofstream(out_path) << csv;
            } else {
                emit(bound_report_to_json(lower_bounds(spec)), format, out_path);
            }
        } else if (*cmd_construct) {
            GroupSpec spec(parse_moduli(cons_moduli));
            std::vector<std::uint32_t> sizes;
            if (!cons_blocks.empty()) sizes = parse_moduli(cons_blocks);
            FieldVariant fv = make_field(cons_backend, spec.exponent());
            Json j = std::visit(
                [&](const auto& field) -> Json {
                    using T = std::decay_t<decltype(field)>;
                    if constexpr (T::exact) {
                        return construct_with_identity(field, cons_method, spec, sizes, seed);
                    } else {
                        throw PreconditionError("construct: use an exact backend (fp or cyclo)");
                    }
                },
                fv);
            emit(j, format, out_path);
        } else if (*cmd_search) {
            return run_search_command(so, format, out_path);
        } else if (*cmd_covering) {
            GroupSpec spec(parse_moduli(cov_moduli));
            auto res = covering_number_exact(spec, cov_cap, env_budget(cov_nodes));
            emit(covering_result_to_json(spec, res), format, out_path);
        } else if (*cmd_decode) {
            if (*dec_canonical) {
                emit(canonical_set_to_json(canonical_set(dec_m)), format, out_path);
            } else if (*dec_trivial) {
                FieldVariant fv = make_field(dec_backend, dec_m);
                Json j = std::visit(
                    [&](const auto& field) -> Json {
                        using T = std::decay_t<decltype(field)>;
                        if constexpr (T::exact) {
                            auto P = trivial_decoding(field, dec_m);
                            Json out;
                            out["poly"] = polynomial_to_json(field, P);
                            auto reloaded = polynomial_from_json(field, out["poly"]);
                            const bool ok =
                                verify_decoding(field, reloaded, canonical_set(dec_m));
                            if (!ok)
                                throw VerificationError(
                                    "decode trivial: emitted polynomial failed re-verification");
                            out["sparsity"] = P.sparsity();
                            out["verified"] = ok;
                            return out;
                        } else {
                            throw PreconditionError("decode: use an exact backend");
                        }
                    },
                    fv);
                emit(j, format, out_path);
            } else if (*dec_verify || *dec_convert) {
                std::ifstream f(dec_file);
                if (!f) throw PreconditionError("cannot open polynomial file");
                Json pj = Json::parse(f);
                if (pj.contains("poly")) pj = pj.at("poly");  // accept wrapped output
                FieldVariant fv = field_from_json(pj.at("field"));
                Json j = std::visit(
                    [&](const auto& field) -> Json {
                        using T = std::decay_t<decltype(field)>;
                        if constexpr (T::exact) {
                            auto P = polynomial_from_json(field, pj);
                            const CanonicalSet S = canonical_set(P.m);
                            Json out;
                            out["verified"] = verify_decoding(field, P, S);
                            if (*dec_convert) {
                                auto spec2 = poly_to_delta(field, P);
                                out["spectrum"] = spectrum_to_json(field, spec2);
                                auto back = delta_to_poly(field, spec2, P.m);
                                out["round_trip"] = back.terms == P.terms;
                                out["delta_verified"] = is_delta_on(
                                    field, inverse(field, spec2),
                                    point_set(spec2.spec, PointSetKind::hypercube));
                            }
                            return out;
                        } else {
                            throw PreconditionError("decode: use an exact backend");
                        }
                    },
                    fv);
                emit(j, format, out_path);
            } else if (*dec_min) {
                FieldVariant fv = make_field(dec_backend, dec_m);
                Json j = std::visit(
                    [&](const auto& field) -> Json {
                        using T = std::decay_t<decltype(field)>;
                        if constexpr (T::exact) {
                            auto res = min_decoding_sparsity(field, dec_m, dec_tmax,
                                                             env_budget(100000000), dec_workers);
                            if (res.status == SearchStatus::aborted)
                                throw BudgetExceeded("decode min-sparsity: budget exhausted");
                            return search_result_to_json(field, res);
                        } else {
                            throw PreconditionError("decode: use an exact backend");
                        }
                    },
                    fv);
                emit(j, format, out_path);
            }
        } else if (*cmd_mobius) {
            auto r2 = verify_r2_lower(mob_m1, mob_m2, env_budget(100000000));
            CyclotomicField field = CyclotomicField::make(std::uint64_t(mob_m1) * mob_m2);
            const std::uint64_t e = field.e();
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::uint32_t> pa(0, mob_m1 - 1), pb(0, mob_m2 - 1);
            bool all_ok = true;
            for (std::uint64_t k = 0; k < mob_trials; ++k) {
                std::array<CyclotomicField::Element, 3> alphas, betas;
                for (int i = 0; i < 3; ++i) {
                    alphas[i] = field.zeta_power(std::uint64_t(pa(rng)) * (e / mob_m1));
                    betas[i] = field.zeta_power(std::uint64_t(pb(rng)) * (e / mob_m2));
                }
                auto P = mobius_multilinear(field, mob_m1, mob_m2, alphas, betas);
                all_ok = all_ok && P.origin_nonzero;
            }
            Json j;
            j["m1"] = mob_m1;
            j["m2"] = mob_m2;
            j["no_3_sparse_delta"] = r2.verified;
            j["subsets_checked"] = r2.subsets_checked;
            j["mobius_trials"] = mob_trials;
            j["mobius_all_ok"] = all_ok;
            if (format == "text") {
                std::cout << (r2.verified ? "no 3-sparse delta: verified"
                                          : "verification FAILED")
                          << " (" << r2.subsets_checked << " supports checked, " << mob_trials
                          << " multilinear trials " << (all_ok ? "ok" : "FAILED") << ")\n";
            } else {
                emit(j, format, out_path);
            }
        } else if (*cmd_pir) {
            // With --t: one report. Without: a table over t = 2 .. r+3.
            std::vector<PirReport> reports;
            if (pir_t >= 0) {
                reports.push_back(pir_params(pir_r, pir_n, static_cast<std::uint32_t>(pir_t)));
            } else {
                for (std::uint32_t t = 2; t <= pir_r + 3; ++t)
                    reports.push_back(pir_params(pir_r, pir_n, t));
            }
            if (format == "csv") {
                std::string csv = "t;required_servers;feasible;k;comm_lower\n";
                for (const auto& rep : reports)
                    csv += std::to_string(*rep.t) + ";" + std::to_string(rep.required_servers) +
                           ";" + (rep.feasible ? "1" : "0") + ";" + std::to_string(rep.k) + ";" +
                           std::to_string(rep.comm_lower) + "\n";
                if (out_path.empty())
                    std::cout << csv;
                else
                    std::ofstream(out_path) << csv;
            } else if (reports.size() == 1) {
                emit(pir_report_to_json(reports[0]), format, out_path);
            } else {
                Json arr = Json::array();
                for (const auto& rep : reports) arr.push_back(pir_report_to_json(rep));
                emit(arr, format, out_path);
            }
        } else if (*cmd_fixtures) {
            if (*fix_run) {
                const std::string s = fixtures_run(seed, fix_workers);
                if (!fix_check.empty()) {
                    std::ifstream f(fix_check);
                    if (!f) throw PreconditionError("cannot open fixture file " + fix_check);
                    std::stringstream ss;
                    ss << f.rdbuf();
                    std::string stored = ss.str();
                    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r'))
                        stored.pop_back();
                    if (stored != s)
                        throw VerificationError("fixture battery drifted from " + fix_check);
                    std::cout << "{\"fixtures_match\":true}\n";
                } else if (out_path.empty()) {
                    std::cout << s << "\n";
                } else {
                    std::ofstream(out_path) << s << "\n";
                }
            }
        }
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
