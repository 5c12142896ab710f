#pragma once

// Command-line front end. `run` is callable in-process so the test suites can
// check byte-stable output without spawning processes.

#include "grcomb/adlv.hpp"
#include "grcomb/io.hpp"
#include "grcomb/satake.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

namespace grcomb {

constexpr const char* kLibraryVersion = "0.1.0";

namespace clidetail {

using nlohmann::ordered_json;

inline Vec parse_int_vec(const std::string& s) {
    Vec out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw SchemaError("expected comma-separated integers, got '" + s + "'");
        }
    }
    return out;
}

inline QVec parse_rat_vec(const std::string& s) {
    QVec out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto slash = tok.find('/');
        try {
            if (slash == std::string::npos) {
                out.push_back(Rat(std::stoll(tok)));
            } else {
                Int num = std::stoll(tok.substr(0, slash));
                Int den = std::stoll(tok.substr(slash + 1));
                if (den == 0) throw std::invalid_argument(tok);
                out.push_back(Rat(num, den));
            }
        } catch (const std::exception&) {
            throw SchemaError("expected comma-separated rationals p/q, got '" + s + "'");
        }
    }
    return out;
}

inline ordered_json rows_json(const std::map<Vec, Int>& rows, const char* key = "weight") {
    ordered_json a = ordered_json::array();
    for (const auto& [w, c] : rows) {
        ordered_json r;
        r[key] = json_vec(w);
        r["mult"] = c;
        a.push_back(r);
    }
    return a;
}

inline ordered_json character_json(const Character& ch) {
    ordered_json r;
    r["lattice"] = ch.lattice;
    r["dim"] = ch.dim();
    r["weights"] = rows_json(ch.support);
    return r;
}

inline ordered_json table_json(const ComponentTable& t) {
    ordered_json r;
    r["side"] = t.side;
    ordered_json rows = ordered_json::array();
    for (const auto& [w, c] : t.rows) {
        ordered_json row;
        row["weight"] = json_vec(w);
        row["count"] = c;
        rows.push_back(row);
    }
    r["rows"] = rows;
    r["total"] = t.total;
    return r;
}

struct CliState {
    std::string group_file;
    std::string output = "structured";
    std::string mu, mu2, lambda, tau, lambda_i, mu_can, nu_can, nu, kappa, lambda_b, values, b;
    std::string side = "splitting";
    bool basic = false;
    bool folded = false;
    Int defect = -1;
    Int bound = 12;
    Int height = 8;
    Int zeta_from = 0;
    Int oracle_rank_max = static_cast<Int>(kOracleRankBound);

    GroupModel model;

    Vec mu_vec() const { return parse_int_vec(mu); }

    BParam b_param() const {
        if (!tau.empty()) return BParam::very_special(parse_int_vec(tau));
        if (basic)
            return BParam::basic(defect >= 0 ? std::optional<Int>(defect) : std::nullopt);
        if (!nu.empty()) {
            std::optional<Vec> lb;
            if (!lambda_b.empty()) lb = parse_int_vec(lambda_b);
            return BParam::explicit_triple(parse_rat_vec(nu), parse_int_vec(kappa),
                                           defect >= 0 ? defect : 0, lb);
        }
        throw SchemaError("specify the class b: --tau, --basic, or --nu/--kappa/--defect");
    }

    Character v_character() const {
        if (!mu.empty()) return restrict_character(model, mu_vec());
        if (!mu_can.empty())
            return full_character(require_folded(model).datum, parse_int_vec(mu_can), "X_*(T)_I");
        throw SchemaError("specify the representation: --mu or --mu-can");
    }
};

inline ordered_json cmd_group_validate(CliState& st, int& exit_code) {
    auto report = validate_model(st.model);
    ordered_json r;
    r["valid"] = report.empty();
    ordered_json v = ordered_json::array();
    for (const auto& line : report) v.push_back(line);
    r["violations"] = v;
    r["model"] = model_summary(st.model);
    if (!report.empty()) exit_code = 1;
    return r;
}

inline ordered_json cmd_oracle_verify(CliState& st) {
    const RootDatum& rd = st.folded ? require_folded(st.model).datum : st.model.datum;
    Int checked = 0;
    bool all = true;
    for (const Vec& mu : dominant_sweep(rd, st.height)) {
        Character a = full_character(rd, mu);
        Character b = oracle_character(rd, mu, static_cast<std::size_t>(st.oracle_rank_max));
        ++checked;
        if (a.support != b.support || a.dim() != weyl_dimension(rd, mu)) all = false;
    }
    ordered_json r;
    r["datum"] = st.folded ? "folded" : "absolute";
    r["height"] = st.height;
    r["checked"] = checked;
    r["all_match"] = all;
    return r;
}

}  // namespace clidetail

/// Entry point; returns the process exit code. Output is a single JSON
/// document in structured mode, key/value lines in human mode.
inline int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace clidetail;
    CLI::App app{"exact dual-group combinatorics on affine Grassmannians"};
    app.require_subcommand(1);

    CliState st;
    std::string command;
    ordered_json inputs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", st.group_file, "group-spec v1 file")->required();
        cmd->add_option("--output", st.output, "human | structured");
    };

    struct Leaf {
        CLI::App* cmd;
        std::function<ordered_json(CliState&, int&)> handler;
    };
    std::vector<Leaf> leaves;
    auto leaf = [&](CLI::App* parent, const char* name, const char* desc,
                    std::function<ordered_json(CliState&, int&)> h) {
        CLI::App* c = parent->add_subcommand(name, desc);
        add_common(c);
        leaves.push_back({c, std::move(h)});
        return c;
    };

    // group
    CLI::App* group = app.add_subcommand("group", "model validation");
    leaf(group, "validate", "check all root-datum and action invariants", cmd_group_validate);

    // rep
    CLI::App* rep = app.add_subcommand("rep", "characters and multiplicities");
    {
        CLI::App* c = leaf(rep, "mult", "weight multiplicity", [](CliState& s, int&) {
            ordered_json r;
            r["mult"] =
                weight_multiplicity(s.model.datum, s.mu_vec(), parse_int_vec(s.lambda));
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        c->add_option("--lambda", st.lambda)->required();

        c = leaf(rep, "dim", "irreducible dimension", [](CliState& s, int&) {
            ordered_json r;
            r["result"] = weyl_dimension(s.model.datum, s.mu_vec());
            return r;
        });
        c->add_option("--mu", st.mu)->required();

        c = leaf(rep, "char", "full weight character", [](CliState& s, int&) {
            return character_json(full_character(s.model.datum, s.mu_vec()));
        });
        c->add_option("--mu", st.mu)->required();

        c = leaf(rep, "tensor", "tensor product decomposition", [](CliState& s, int&) {
            ordered_json r;
            r["summands"] = rows_json(tensor_decompose(s.model.datum, s.mu_vec(),
                                                       parse_int_vec(s.mu2)));
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        c->add_option("--mu2", st.mu2)->required();

        c = leaf(rep, "restrict", "character pushed to the coinvariant lattice",
                 [](CliState& s, int&) { return character_json(restrict_character(s.model, s.mu_vec())); });
        c->add_option("--mu", st.mu)->required();

        c = leaf(rep, "branch", "decomposition into folded irreducibles", [](CliState& s, int&) {
            ordered_json r;
            r["summands"] = rows_json(branch_to_invariants(s.model, s.mu_vec()));
            return r;
        });
        c->add_option("--mu", st.mu)->required();
    }

    // kottwitz
    CLI::App* kot = app.add_subcommand("kottwitz", "sigma-conjugacy class invariants");
    {
        CLI::App* c = leaf(kot, "kappa", "Kottwitz invariant of a very special class",
                           [](CliState& s, int&) {
                               ordered_json r;
                               r["coords"] = json_vec(kottwitz_invariant(s.model, parse_int_vec(s.tau)));
                               r["free_rank"] = s.model.pi1_gamma_q.group.free_rank;
                               ordered_json tor = ordered_json::array();
                               for (Int d : s.model.pi1_gamma_q.group.torsion) tor.push_back(d);
                               r["torsion"] = tor;
                               return r;
                           });
        c->add_option("--tau", st.tau)->required();

        c = leaf(kot, "newton", "Newton point (very special --tau, or --mu --basic)",
                 [](CliState& s, int&) {
                     ordered_json r;
                     if (!s.tau.empty())
                         r["nu"] = json_qvec(newton_point_vsp(s.model, parse_int_vec(s.tau)).nu);
                     else if (s.basic && !s.mu.empty())
                         r["nu"] = json_qvec(newton_basic(s.model, s.mu_vec()).nu);
                     else
                         throw SchemaError("newton needs --tau or --mu with --basic");
                     return r;
                 });
        c->add_option("--tau", st.tau);
        c->add_option("--mu", st.mu);
        c->add_flag("--basic", st.basic);

        c = leaf(kot, "vsp-enum", "very special classes in B(G,mu)", [](CliState& s, int&) {
            ordered_json arr = ordered_json::array();
            for (const KottwitzVsp& cls : enumerate_vsp_bgmu(s.model, s.mu_vec())) {
                ordered_json e;
                e["tau"] = json_vec(cls.tau);
                e["kappa"] = json_vec(kottwitz_invariant(s.model, cls.tau));
                e["nu"] = json_qvec(newton_point_vsp(s.model, cls.tau).nu);
                arr.push_back(e);
            }
            ordered_json r;
            r["classes"] = arr;
            r["count"] = arr.size();
            return r;
        });
        c->add_option("--mu", st.mu)->required();

        c = leaf(kot, "in-bgmu", "membership of a very special class in B(G,mu)",
                 [](CliState& s, int&) {
                     ordered_json r;
                     r["result"] = vsp_in_bgmu(s.model, parse_int_vec(s.tau), s.mu_vec());
                     return r;
                 });
        c->add_option("--tau", st.tau)->required();
        c->add_option("--mu", st.mu)->required();

        c = leaf(kot, "tate-dim", "dimension of the Tate weight space", [](CliState& s, int&) {
            ordered_json r;
            if (s.side == "splitting")
                r["result"] = tate_dim_splitting(s.model, s.mu_vec());
            else if (s.side == "canonical")
                r["result"] = tate_dim_canonical(s.model, parse_int_vec(s.mu_can));
            else
                throw SchemaError("--side must be splitting or canonical");
            return r;
        });
        c->add_option("--mu", st.mu);
        c->add_option("--mu-can", st.mu_can);
        c->add_option("--side", st.side);

        c = leaf(kot, "basic-vsp", "is the basic class of B(G,mu) very special",
                 [](CliState& s, int&) {
                     BasicVspReport rep = basic_is_very_special(s.model, s.mu_vec());
                     ordered_json r;
                     r["result"] = rep.very_special;
                     ordered_json crit;
                     crit["tate_dim_canonical"] = rep.tate_dim_canonical;
                     crit["tate_dim_splitting"] = rep.tate_dim_splitting;
                     crit["adjoint_kappa_trivial"] = rep.adjoint_kappa_trivial;
                     r["criteria"] = crit;
                     return r;
                 });
        c->add_option("--mu", st.mu)->required();
    }

    // adlv
    CLI::App* adlv = app.add_subcommand("adlv", "affine Deligne-Lusztig combinatorics");
    auto add_b_options = [&](CLI::App* c) {
        c->add_option("--tau", st.tau, "very special representative");
        c->add_flag("--basic", st.basic, "the basic class of B(G,mu)");
        c->add_option("--defect", st.defect, "defect for basic/explicit classes");
        c->add_option("--nu", st.nu, "explicit Newton point, rationals");
        c->add_option("--kappa", st.kappa, "explicit Kottwitz invariant coordinates");
        c->add_option("--lambda-b", st.lambda_b, "lift of lambda_b for explicit classes");
    };
    {
        CLI::App* c = leaf(adlv, "nonempty", "is X(b) nonempty", [](CliState& s, int&) {
            ordered_json r;
            r["result"] = adlv_nonempty(s.model, s.mu_vec(), resolve_b(s.model, s.mu_vec(), s.b_param()));
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        add_b_options(c);

        c = leaf(adlv, "dim", "dimension of X(b)", [](CliState& s, int&) {
            ordered_json r;
            r["result"] = adlv_dimension(s.model, s.mu_vec(), resolve_b(s.model, s.mu_vec(), s.b_param()));
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        add_b_options(c);

        c = leaf(adlv, "components", "component tables (splitting; canonical with --mu-can)",
                 [](CliState& s, int&) {
                     ResolvedB b = resolve_b(s.model, s.mu_vec(), s.b_param());
                     ordered_json r;
                     if (!s.mu_can.empty())
                         r["table"] = table_json(
                             component_table_can(s.model, s.mu_vec(), b, parse_int_vec(s.mu_can)));
                     else
                         r["table"] = table_json(component_table(s.model, s.mu_vec(), b));
                     return r;
                 });
        c->add_option("--mu", st.mu)->required();
        c->add_option("--mu-can", st.mu_can);
        add_b_options(c);

        c = leaf(adlv, "min-nu", "minimal twisting cocharacter", [](CliState& s, int&) {
            MinimalNu r0 = minimal_nu(s.model, s.mu_vec(), parse_int_vec(s.lambda_i), s.bound);
            ordered_json r;
            r["nu"] = json_vec(r0.nu_I);
            r["hom_dim"] = r0.hom_dim;
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        c->add_option("--lambda-i", st.lambda_i)->required();
        c->add_option("--bound", st.bound);

        c = leaf(adlv, "norm-reduce", "unramified norm reduction", [](CliState& s, int&) {
            NormReduction r0 = norm_reduce(s.model, s.mu_vec(), parse_int_vec(s.b));
            ordered_json r;
            ordered_json tup = ordered_json::array();
            for (const Vec& v : r0.mu_tuple) tup.push_back(json_vec(v));
            r["mu_tuple"] = tup;
            r["nm_b"] = json_vec(r0.nm_b);
            r["pairing_lhs"] = r0.pairing_lhs;
            r["pairing_rhs"] = r0.pairing_rhs;
            r["newton_lhs"] = rat_string(r0.newton_lhs);
            r["newton_rhs"] = rat_string(r0.newton_rhs);
            r["identities_hold"] = r0.identities_hold;
            return r;
        });
        c->add_option("--mu", st.mu)->required();
        c->add_option("--b", st.b)->required();

        c = leaf(adlv, "basic-stratum", "basic-stratum MV count", [](CliState& s, int&) {
            BasicStratumCount r0 = basic_stratum_mv_count(s.model, s.mu_vec());
            ordered_json r;
            r["mv_tate_count"] = r0.mv_tate_count;
            r["rho_mu"] = r0.rho_mu;
            ordered_json ws = ordered_json::array();
            for (const Vec& w : r0.tate_weights) ws.push_back(json_vec(w));
            r["tate_weights"] = ws;
            return r;
        });
        c->add_option("--mu", st.mu)->required();
    }

    // satake
    CLI::App* sat = app.add_subcommand("satake", "determinant divisor and genericity");
    {
        CLI::App* c = leaf(sat, "coroots", "relative coroot system", [](CliState& s, int&) {
            ordered_json arr = ordered_json::array();
            for (const RelativeCoroot& rc : relative_coroots(s.model)) {
                ordered_json e;
                e["alpha"] = json_vec(rc.alpha);
                e["multipliable"] = rc.multipliable;
                e["alpha_sigma"] = json_vec(rc.alpha_sigma);
                arr.push_back(e);
            }
            ordered_json r;
            r["coroots"] = arr;
            return r;
        });

        c = leaf(sat, "zeta", "exponents of the determinant divisor", [](CliState& s, int&) {
            auto z = zeta_exponents(s.model, s.v_character(), static_cast<int>(s.zeta_from));
            ordered_json arr = ordered_json::array();
            for (const auto& [al, val] : z) {
                ordered_json e;
                e["alpha"] = json_vec(al);
                e["zeta"] = val;
                arr.push_back(e);
            }
            ordered_json r;
            r["zeta"] = arr;
            return r;
        });
        c->add_option("--mu", st.mu);
        c->add_option("--mu-can", st.mu_can);
        c->add_option("--zeta-from", st.zeta_from, "start the exponent sum at n = 0 or 1");

        c = leaf(sat, "divisor", "determinant divisor factors", [](CliState& s, int&) {
            Divisor d = determinant_divisor(s.model, s.v_character(), static_cast<int>(s.zeta_from));
            ordered_json arr = ordered_json::array();
            for (const DivisorFactor& f : d.factors) {
                ordered_json e;
                e["alpha"] = json_vec(f.alpha);
                e["sign"] = f.plus_sign ? "+" : "-";
                e["zeta"] = f.zeta;
                arr.push_back(e);
            }
            ordered_json r;
            r["factors"] = arr;
            r["empty"] = d.empty();
            return r;
        });
        c->add_option("--mu", st.mu);
        c->add_option("--mu-can", st.mu_can);
        c->add_option("--zeta-from", st.zeta_from);

        c = leaf(sat, "general", "is the parameter V-general", [](CliState& s, int&) {
            Character v = s.v_character();
            Divisor d = determinant_divisor(s.model, v, static_cast<int>(s.zeta_from));
            QVec vals = parse_rat_vec(s.values);
            SatakeParameter p = make_satake_parameter(s.model, std::vector<Rat>(vals.begin(), vals.end()));
            ordered_json r;
            r["result"] = is_v_general(s.model, d, p);
            return r;
        });
        c->add_option("--mu", st.mu);
        c->add_option("--mu-can", st.mu_can);
        c->add_option("--values", st.values)->required();
        c->add_option("--zeta-from", st.zeta_from);

        c = leaf(sat, "strong-general", "is the parameter strongly V-general", [](CliState& s, int&) {
            Character v = s.v_character();
            QVec vals = parse_rat_vec(s.values);
            SatakeParameter p = make_satake_parameter(s.model, std::vector<Rat>(vals.begin(), vals.end()));
            ordered_json r;
            r["result"] = is_strongly_v_general(s.model, v, p);
            return r;
        });
        c->add_option("--mu", st.mu);
        c->add_option("--mu-can", st.mu_can);
        c->add_option("--values", st.values)->required();
    }

    // oracle
    CLI::App* oracle = app.add_subcommand("oracle", "independent verification sweeps");
    {
        CLI::App* c = leaf(oracle, "verify", "Weyl-sum oracle vs Freudenthal",
                           [](CliState& s, int&) { return cmd_oracle_verify(s); });
        c->add_option("--height", st.height, "sweep bound on <two_rho, mu>");
        c->add_option("--oracle-rank-max", st.oracle_rank_max, "rank bound for the oracle");
        c->add_flag("--folded", st.folded, "verify the folded datum instead");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help() << std::flush;
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const Leaf* active = nullptr;
    for (const Leaf& l : leaves)
        if (l.cmd->parsed()) active = &l;
    if (!active) {
        err << "usage error: no command selected\n";
        return 2;
    }
    {
        CLI::App* p = active->cmd;
        command = p->get_name();
        while ((p = p->get_parent()) != nullptr && p->get_parent() != nullptr)
            command = p->get_name() + " " + command;
    }

    ordered_json doc;
    doc["command"] = command;
    inputs["group"] = st.group_file;
    for (const auto& [key, val] :
         std::initializer_list<std::pair<const char*, const std::string&>>{
             {"mu", st.mu}, {"mu2", st.mu2}, {"lambda", st.lambda}, {"tau", st.tau},
             {"lambda_i", st.lambda_i}, {"mu_can", st.mu_can}, {"nu", st.nu},
             {"kappa", st.kappa}, {"lambda_b", st.lambda_b}, {"values", st.values},
             {"b", st.b}, {"side", st.side}})
        if (!val.empty()) inputs[key] = val;
    if (st.basic) inputs["basic"] = true;
    if (st.defect >= 0) inputs["defect"] = st.defect;
    doc["inputs"] = inputs;

    int exit_code = 0;
    try {
        st.model = load_group_file(st.group_file);
        doc["result"] = active->handler(st, exit_code);
    } catch (const SchemaError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        doc["error"] = e.name();
        doc["message"] = e.what();
        doc["provenance"] = {{"library", "grcomb"}, {"version", kLibraryVersion}};
        out << doc.dump(2) << "\n";
        return 1;
    }
    doc["provenance"] = {{"library", "grcomb"}, {"version", kLibraryVersion}};

    if (st.output == "human") {
        out << command << "\n";
        out << doc["result"].dump(2) << "\n";
    } else {
        out << doc.dump(2) << "\n";
    }
    return exit_code;
}

}  // namespace grcomb
