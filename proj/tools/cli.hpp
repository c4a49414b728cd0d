#pragma once

#include <ellipack/ellipack.hpp>
#include <ellipack/io.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef ELLIPACK_VERSION
#define ELLIPACK_VERSION "dev"
#endif

namespace ellipack::cli {

enum exit_code : int {
    ok = 0,
    obstructed = 1,
    inconclusive = 2,
    hypothesis = 3,
    usage = 4,
    precision = 5,
};

inline int exit_for(errc c) {
    switch (c) {
    case errc::parse:
    case errc::zero_denominator:
    case errc::negative_value:
    case errc::invalid_argument: return usage;
    case errc::hypothesis_failure:
    case errc::threshold_failure: return hypothesis;
    case errc::volume_obstruction: return obstructed;
    case errc::precision_exhausted: return precision;
    }
    return usage;
}

inline int exit_for(Decision::Outcome o) {
    switch (o) {
    case Decision::Outcome::embeds: return ok;
    case Decision::Outcome::obstructed: return obstructed;
    case Decision::Outcome::verified_up_to: return inconclusive;
    }
    return usage;
}

namespace detail {

inline Rat rational_arg(const std::string& s) {
    auto v = Surd::parse(s).rational();
    if (!v) throw error(errc::invalid_argument, "'" + s + "' must be rational here");
    return *v;
}

inline std::string approx(const Rat& lo, const Rat& hi) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.6g", (XReal::interval(lo, hi, 0).approx()));
    return buf;
}

// --pretty: indentation, plus a clearly marked 6-digit approximation next to every interval.
inline void annotate(io::json& j) {
    if (j.is_object()) {
        if (j.contains("lo") && j.contains("hi") && j["lo"].is_string() && j["hi"].is_string())
            j["approx"] = approx(Rat::parse(j["lo"].get<std::string>()), Rat::parse(j["hi"].get<std::string>()));
        for (auto& [k, v] : j.items()) annotate(v);
    } else if (j.is_array()) {
        for (auto& v : j) annotate(v);
    }
}

} // namespace detail

/// Parse argv, run one subcommand, write its payload to `out` and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact ECH capacities, ellipsoid embeddings and packing stability bounds", "ellipack"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    unsigned max_bits = 0;
    app.add_flag("--pretty", pretty, "indented JSON with approximate values");
    app.add_option("--precision", max_bits, "cap on interval precision in bits")->check(CLI::Range(8u, 1u << 20));
    app.set_version_flag("--version", std::string("ellipack ") + ELLIPACK_VERSION);

    std::string a, b, y;
    std::size_t terms = 0;
    bool csv = false, json_out = false;
    auto* caps = app.add_subcommand("caps", "capacity sequence N(a,b)(0..K-1)");
    caps->add_option("A", a)->required();
    caps->add_option("B", b)->required();
    caps->add_option("--terms", terms, "number of terms")->required();
    caps->add_flag("--csv", csv, "CSV output (default)");
    caps->add_flag("--json", json_out, "JSON output");

    auto* count = app.add_subcommand("count", "R(a,b)(y), pairs (l,p) with a l + b p <= y");
    count->add_option("A", a)->required();
    count->add_option("B", b)->required();
    count->add_option("Y", y)->required();

    auto* bounds = app.add_subcommand("bounds", "quadratic bounds around R(a,b)(y)");
    bounds->add_option("A", a)->required();
    bounds->add_option("B", b)->required();
    bounds->add_option("Y", y)->required();

    std::string dom, tgt;
    std::size_t max_terms = 100000;
    auto* decide_cmd = app.add_subcommand("decide", "decide E(a,b) -> E(c,d)");
    decide_cmd->add_option("DOM", dom)->required();
    decide_cmd->add_option("TGT", tgt)->required();
    decide_cmd->add_option("--max-terms", max_terms, "terms compared when no cutoff exists")->check(CLI::PositiveNumber);

    std::string verify_file;
    bool skip_gate = false;
    auto* plan = app.add_subcommand("plan", "certificate for DOM -> TGT, or verify one");
    plan->add_option("DOM", dom);
    plan->add_option("TGT", tgt);
    plan->add_option("--verify", verify_file, "certificate JSON to re-verify");
    plan->add_flag("--skip-thinness-gate", skip_gate, "do not require a_n/a_1 > S");

    auto* pack = app.add_subcommand("pack", "full fillings by balls or ellipsoids");
    pack->require_subcommand(1);
    std::size_t k = 0, dim = 2;
    std::string into;
    auto* balls = pack->add_subcommand("balls", "k balls B(1) -> E(1,...,1,k)");
    balls->add_option("K", k)->required()->check(CLI::PositiveNumber);
    balls->add_option("--dim", dim, "n (dimension 2n)")->check(CLI::Range(2, 64));
    balls->add_option("--into", into, "continue into this ellipsoid");
    auto* ells = pack->add_subcommand("ellipsoid", "k copies of D -> D with last factor times k");
    ells->add_option("D", dom)->required();
    ells->add_option("K", k)->required()->check(CLI::PositiveNumber);

    auto* stab = app.add_subcommand("stab", "packing stability bounds");
    stab->require_subcommand(1);
    std::size_t n = 0, d = 0, chain_k = 0;
    bool packing = false;
    std::string exceptions_file;
    auto* cpn = stab->add_subcommand("cpn", "N_stab(CP^n)");
    cpn->add_option("N", n)->required()->check(CLI::Range(2, 64));
    cpn->add_option("--chain", chain_k, "also build the chain at this k")->check(CLI::PositiveNumber);
    cpn->add_flag("--packing", packing, "prefix the chain with the ball packing step");
    cpn->add_option("--exceptions", exceptions_file, "JSON list of [lo, hi] exception intervals");
    auto* hyp = stab->add_subcommand("hyp", "N_stab(H^n_d)");
    hyp->add_option("N", n)->required()->check(CLI::Range(2, 64));
    hyp->add_option("D", d)->required()->check(CLI::PositiveNumber);
    hyp->add_option("--chain", chain_k, "also build the chain at this k")->check(CLI::PositiveNumber);
    hyp->add_flag("--packing", packing, "prefix the chain with the ball packing step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    auto emit = [&](io::json j) {
        if (pretty) {
            detail::annotate(j);
            out << j.dump(2) << '\n';
        } else {
            out << j.dump() << '\n';
        }
    };

    try {
        Precision prec = Precision::from_env();
        if (max_bits) {
            prec.max_bits = max_bits;
            prec.start_bits = std::min(prec.start_bits, max_bits);
        }

        if (*caps) {
            if (terms == 0) throw error(errc::invalid_argument, "--terms must be positive");
            const auto v = cap_sequence(detail::rational_arg(a), detail::rational_arg(b), terms - 1);
            if (json_out && !csv) {
                io::json vals = io::json::array();
                for (const auto& x : v) vals.push_back(x.to_string());
                emit({{"a", a}, {"b", b}, {"values", vals}});
            } else {
                io::write_csv(out, v);
            }
            return ok;
        }
        if (*count) {
            const Rat ra = detail::rational_arg(a), rb = detail::rational_arg(b), ry = detail::rational_arg(y);
            emit({{"a", ra.to_string()}, {"b", rb.to_string()}, {"y", ry.to_string()}, {"count", lattice_count(ra, rb, ry)}});
            return ok;
        }
        if (*bounds) {
            const Rat ra = detail::rational_arg(a), rb = detail::rational_arg(b), ry = detail::rational_arg(y);
            emit({{"a", ra.to_string()},
                  {"b", rb.to_string()},
                  {"y", ry.to_string()},
                  {"lower", parabola_lower(ra, rb, ry).to_string()},
                  {"count", lattice_count(ra, rb, ry)},
                  {"upper", parabola_upper(ra, rb, ry).to_string()}});
            return ok;
        }
        if (*decide_cmd) {
            DecideOptions opt;
            opt.max_terms = max_terms;
            opt.precision = prec;
            const Decision dec = decide(io::parse_ellipsoid(dom), io::parse_ellipsoid(tgt), opt);
            emit(io::to_json(dec));
            return exit_for(dec.outcome);
        }
        if (*plan) {
            if (!verify_file.empty()) {
                std::ifstream in(verify_file);
                if (!in) throw error(errc::invalid_argument, "cannot read " + verify_file);
                io::json j;
                try {
                    j = io::json::parse(in);
                } catch (const io::json::exception& e) {
                    throw error(errc::parse, verify_file + ": " + e.what());
                }
                const VerifyReport rep = verify(io::certificate_from_json(j), prec);
                emit(io::to_json(rep));
                return rep.ok() ? ok : hypothesis;
            }
            if (dom.empty() || tgt.empty()) throw error(errc::invalid_argument, "plan needs DOM and TGT, or --verify FILE");
            ChainOptions opt{skip_gate, prec};
            emit(io::to_json(main_chain(io::parse_ellipsoid(dom), io::parse_ellipsoid(tgt), opt)));
            return ok;
        }
        if (*balls) {
            if (into.empty()) {
                emit(io::to_json(single_step(pack_balls_step(k, dim))));
                return ok;
            }
            const Ellipsoid target = io::parse_ellipsoid(into);
            Certificate cert = single_step(pack_balls_step(k, target.dim_half()));
            cert.append(main_chain(cert.target, target, ChainOptions{skip_gate, prec}));
            emit(io::to_json(cert));
            return ok;
        }
        if (*ells) {
            emit(io::to_json(single_step(pack_ellipsoids_step(io::parse_ellipsoid(dom), k))));
            return ok;
        }
        if (*cpn) {
            std::optional<ExceptionTable> table;
            if (!exceptions_file.empty()) {
                std::ifstream in(exceptions_file);
                if (!in) throw error(errc::invalid_argument, "cannot read " + exceptions_file);
                try {
                    table = io::exceptions_from_json(io::json::parse(in));
                } catch (const io::json::exception& e) {
                    throw error(errc::parse, exceptions_file + ": " + e.what());
                }
            }
            StabReport rep = nstab_cpn(n, table, prec);
            if (chain_k) rep.chain = cpn_chain(n, chain_k, packing, prec);
            emit(io::to_json(rep));
            return rep.ok() ? ok : hypothesis;
        }
        if (*hyp) {
            StabReport rep = nstab_hnd(n, d, prec);
            if (chain_k) rep.chain = hnd_chain(n, d, chain_k, packing, prec);
            emit(io::to_json(rep));
            return rep.ok() ? ok : hypothesis;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e.code());
    }
    return usage;
}

} // namespace ellipack::cli
