#include "okalab/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "okalab/branchlog.hpp"
#include "okalab/bundlecalc.hpp"
#include "okalab/curvelab.hpp"
#include "okalab/emit.hpp"
#include "okalab/errors.hpp"
#include "okalab/latticeforms.hpp"
#include "okalab/monodromy.hpp"
#include "okalab/steinfn.hpp"

namespace okalab::cli {

namespace {

cplx parse_complex(const std::string& text, const char* flag) {
    std::istringstream is(text);
    double re = 0.0;
    double im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw PreconditionError(std::string(flag) + ": expected 're,im', got '" + text + "'");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) {
            throw PreconditionError(std::string(flag) + ": expected 're,im', got '" + text + "'");
        }
    }
    std::string trailing;
    if (is >> trailing) throw PreconditionError(std::string(flag) + ": trailing input in '" + text + "'");
    return {re, im};
}

ojson read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config '" + path + "'");
    try {
        return ojson::parse(in);
    } catch (const ojson::exception& e) {
        throw PreconditionError("malformed config '" + path + "': " + e.what());
    }
}

// ---- shared parameter blocks -------------------------------------------------

struct Tolerance {
    double target = 1e-12;
    int max_terms = 200;

    TruncationBudget budget() const { return TruncationBudget(target, max_terms); }
};

struct PointArgs {
    std::string z = "1,0";
    int branch_shift = 0;

    BranchedPoint branch() const { return principal_branch(parse_complex(z, "--z")).shifted(branch_shift); }
};

void add_point_options(CLI::App* cmd, PointArgs& p) {
    cmd->add_option("--z", p.z, "z as 're,im' (principal branch)")->capture_default_str();
    cmd->add_option("--branch-shift", p.branch_shift, "add 2*pi*i*k to log z")->capture_default_str();
}

FunctionHandle parse_handle(const std::string& spec, cplx lambda) {
    std::optional<FunctionHandle> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t stop = spec.find('*', start);
        std::string tok = spec.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
        for (auto& c : tok) {
            if (c == '-') c = '_';
        }
        FunctionHandle h = tok == "fplus"         ? FunctionHandle::fplus()
                           : tok == "fminus"      ? FunctionHandle::fminus()
                           : tok == "fplus_shift" ? FunctionHandle::fplus_shift(lambda)
                                                  : throw PreconditionError("unknown handle '" + tok +
                                                                            "' (fplus, fminus, fplus-shift)");
        out = out ? *out * h : h;
        if (stop == std::string::npos) break;
        start = stop + 1;
    }
    return *out;
}

const char* status_name(EvalStatus s) {
    return s == EvalStatus::certified ? "certified" : "rounding_limited";
}

ojson eval_json(const EvalResult& r) {
    ojson j;
    j["value"] = complex_json(r.value);
    j["rel_error_bound"] = r.rel_error_bound;
    j["nu_terms"] = r.nu_terms;
    j["mu_terms"] = r.mu_terms;
    j["status"] = status_name(r.status);
    return j;
}

ojson cycle_json(const SupportCycleDecl& c) {
    if (c.terms.size() == 1) {
        const CycleTerm& t = c.terms.front();
        if (t.coefficient == 1) return ojson::array({t.a, t.b});
        return ojson::array({t.a, t.b, t.coefficient});
    }
    ojson arr = ojson::array();
    for (const CycleTerm& t : c.terms) arr.push_back(ojson::array({t.a, t.b, t.coefficient}));
    return arr;
}

ojson pairing_json(const CyclePairing& p) {
    ojson j;
    j["cycle"] = cycle_json(p.cycle);
    j["pairing"] = p.pairing;
    return j;
}

CycleTerm parse_term(const ojson& t) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number_integer()) {
        throw PreconditionError("support cycle term must be [a, b, coefficient]");
    }
    return {t[0].get<int>(), t[1].get<int>(), t[2].get<std::int64_t>()};
}

DivisorSpec parse_divisor(const ojson& doc) {
    try {
        DivisorSpec spec;
        for (const auto& c : doc.at("components")) {
            std::vector<std::vector<std::int64_t>> rows = c.at("exponents").get<std::vector<std::vector<std::int64_t>>>();
            spec.components.push_back({c.value("name", std::string("D")), ExponentMatrix(std::move(rows))});
        }
        spec.support_dim = doc.at("support_dim").get<int>();
        for (const auto& entry : doc.value("support_cycles", ojson::array())) {
            SupportCycleDecl decl;
            if (!entry.empty() && entry[0].is_array()) {
                for (const auto& t : entry) decl.terms.push_back(parse_term(t));
            } else {
                decl.terms.push_back(parse_term(entry));
            }
            spec.support_cycles.push_back(std::move(decl));
        }
        return spec;
    } catch (const ojson::exception& e) {
        throw PreconditionError(std::string("malformed divisor config: ") + e.what());
    }
}

SublatticeDecl parse_sublattice(const std::string& text, int n) {
    if (text == "covering") return SublatticeDecl::covering(n);
    if (text == "deck") return SublatticeDecl::deck(n);
    SublatticeDecl s;
    std::size_t start = 0;
    while (true) {
        const std::size_t stop = text.find(';', start);
        s.generators.push_back(parse_lattice_vector(text.substr(start, stop - start), n));
        if (stop == std::string::npos) break;
        start = stop + 1;
    }
    return s;
}

ojson takayama_json(const HermitianFormSpec& omega, const TakayamaReport& rep) {
    ojson j;
    j["n"] = omega.n;
    j["d"] = omega.d;
    j["offdiag"] = omega.offdiag;
    j["obstruction"] = rep.obstruction;
    if (rep.witness) {
        ojson w;
        w["u"] = to_string(rep.witness->u);
        w["v"] = to_string(rep.witness->v);
        w["generators"] = ojson::array({rep.witness->first, rep.witness->second});
        w["value"] = rep.witness->value;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["cycles_checked"] = rep.cycles_checked;
    j["warnings"] = rep.warnings;
    j["exact"] = true;
    return j;
}

// ---- CSV ---------------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::string out;
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out;
    }

    ojson json() const {
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            ojson row;
            for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = ojson::parse(r[i]);
            arr.push_back(row);
        }
        return arr;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"okalab: Stein divisors, monodromy, Chern pairings and extra-zero verdicts"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format;  // empty: JSON documents, CSV tables
    std::uint64_t seed = kDefaultSeed;
    Tolerance tol;
    app.add_option("--format", format, "json | csv; sweeps default to csv, everything else is json")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--target", tol.target, "relative error target for Stein products")->capture_default_str();
    app.add_option("--max-terms", tol.max_terms, "truncation cap per product")->capture_default_str();

    std::function<ojson()> action;
    std::function<Table()> table_action;

    // stein ---------------------------------------------------------------------
    auto* stein = app.add_subcommand("stein", "Stein function evaluation")->require_subcommand(1);
    PointArgs se_pt;
    std::string se_w = "1,0";
    std::string se_fn = "fplus";
    std::string se_lambda = "0,0";
    auto* se = stein->add_subcommand("eval", "evaluate F+, F- or F+_lambda");
    add_point_options(se, se_pt);
    se->add_option("--w", se_w, "w as 're,im'")->capture_default_str();
    se->add_option("--fn", se_fn, "fplus | fminus | fplus-shift")->capture_default_str();
    se->add_option("--lambda", se_lambda, "shift lambda as 're,im'")->capture_default_str();
    se->callback([&] {
        action = [&] {
            const BranchedPoint zb = se_pt.branch();
            const cplx w = parse_complex(se_w, "--w");
            const FunctionHandle f = parse_handle(se_fn, parse_complex(se_lambda, "--lambda"));
            return eval_json(f(zb, w, tol.budget()));
        };
    });

    PointArgs sm_pt;
    std::string sm_w = "3,0";
    std::string sm_fn = "fplus";
    std::string sm_lambda = "1,0";
    auto* sm = stein->add_subcommand("monodromy", "z-loop and w-loop factors");
    add_point_options(sm, sm_pt);
    sm->add_option("--w", sm_w, "w as 're,im'")->capture_default_str();
    sm->add_option("--fn", sm_fn, "handle, e.g. fplus or fplus*fminus")->capture_default_str();
    sm->add_option("--lambda", sm_lambda, "shift for fplus-shift")->capture_default_str();
    sm->callback([&] {
        action = [&] {
            const BranchedPoint zb = sm_pt.branch();
            const cplx w = parse_complex(sm_w, "--w");
            const FunctionHandle f = parse_handle(sm_fn, parse_complex(sm_lambda, "--lambda"));
            const FactorResult zf = z_loop_factor(f, zb, w, tol.budget());
            const FactorResult wf = w_loop_factor(f, zb, w, tol.budget());
            ojson j;
            j["function"] = f.tag();
            j["z_loop_factor"] = complex_json(zf.value);
            j["z_loop_rel_error_bound"] = zf.rel_error_bound;
            j["w_loop_factor"] = complex_json(wf.value);
            j["w_loop_rel_error_bound"] = wf.rel_error_bound;
            return j;
        };
    });

    PointArgs sz_pt;
    double sz_r1 = 0.5;
    double sz_r2 = 2.0;
    auto* sz = stein->add_subcommand("zeros", "count sheets of w = z^i in an annulus");
    add_point_options(sz, sz_pt);
    sz->add_option("--r1", sz_r1, "inner radius")->capture_default_str();
    sz->add_option("--r2", sz_r2, "outer radius")->capture_default_str();
    sz->callback([&] {
        action = [&] {
            const BranchedPoint zb = sz_pt.branch();
            const WindingResult wr = zero_count_annulus(zb, sz_r1, sz_r2, tol.budget());
            ojson sheets = ojson::array();
            for (int k = -50; k <= 50; ++k) {
                const double m = sheet_modulus(zb, k);
                if (m > sz_r1 && m < sz_r2) {
                    ojson s;
                    s["k"] = k;
                    s["w"] = complex_json(sheet_point(zb, k));
                    sheets.push_back(s);
                }
            }
            ojson j;
            j["count"] = wr.winding;
            j["residual"] = wr.residual;
            j["sheet_enumeration"] = sheets.size();
            j["sheets"] = sheets;
            return j;
        };
    });

    // pairing -------------------------------------------------------------------
    std::string pr_handle = "fplus";
    std::string pr_lambda = "1,0";
    TorusCycle pr_torus;
    auto* pr = app.add_subcommand("pairing", "<c1(L(D)), T> on a coordinate torus");
    pr->add_option("--handle", pr_handle, "fplus | fminus | fplus-shift, products with '*'")->capture_default_str();
    pr->add_option("--lambda", pr_lambda, "shift for fplus-shift")->capture_default_str();
    pr->add_option("--rz", pr_torus.r_z, "z radius")->capture_default_str();
    pr->add_option("--rw", pr_torus.r_w, "w radius")->capture_default_str();
    pr->add_option("--orientation", pr_torus.orientation, "+1 or -1")->capture_default_str();
    pr->callback([&] {
        action = [&] {
            const FunctionHandle f = parse_handle(pr_handle, parse_complex(pr_lambda, "--lambda"));
            const PairingResult p = chern_pairing(f, pr_torus, tol.budget());
            const IntersectionCount ic = torus_intersection_count(f.zero_sheets(), pr_torus);
            ojson j;
            j["pairing"] = p.pairing;
            j["residual"] = p.residual;
            j["samples_used"] = p.samples_used;
            j["intersection_count"] = ic.count;
            return j;
        };
    });

    // oka -----------------------------------------------------------------------
    auto* oka = app.add_subcommand("oka", "extra-zero decision procedure")->require_subcommand(1);
    std::string od_config;
    auto* od = oka->add_subcommand("decide", "decide a divisor config");
    od->add_option("--config", od_config, "divisor JSON")->required();
    od->callback([&] {
        action = [&] {
            const Verdict v = restrict_and_decide(parse_divisor(read_json_file(od_config)));
            ojson j;
            j["extra_zero_on_tested"] = v.extra_zero_on_tested;
            j["witness"] = v.witness ? pairing_json(*v.witness) : ojson(nullptr);
            j["cousin2_on_tested"] = v.cousin2_on_tested;
            j["rule_applied"] = to_string(v.rule_applied);
            j["ambient_pairings"] = ojson::array();
            for (const auto& p : v.ambient_pairings) j["ambient_pairings"].push_back(pairing_json(p));
            j["support_pairings"] = ojson::array();
            for (const auto& p : v.support_pairings) j["support_pairings"].push_back(pairing_json(p));
            return j;
        };
    });

    // lattice -------------------------------------------------------------------
    auto* lattice = app.add_subcommand("lattice", "exact (1,1)-form pairings")->require_subcommand(1);
    HermitianFormSpec lp_omega;
    bool lp_diag = false;
    std::string lp_u = "ie1";
    std::string lp_v = "e2";
    std::string lp_sub;
    auto* lp = lattice->add_subcommand("pair", "omega(u, v) for lattice vectors");
    lp->add_option("--n", lp_omega.n, "dimension")->capture_default_str();
    lp->add_option("--d", lp_omega.d, "diagonal weight")->capture_default_str();
    lp->add_flag("--diagonal-only", lp_diag, "drop the off-diagonal part of omega");
    lp->add_option("--u", lp_u, "e.g. 'ie1' or '2*ie1 + e3'")->capture_default_str();
    lp->add_option("--v", lp_v, "second vector")->capture_default_str();
    lp->add_option("--sublattice", lp_sub, "covering | deck | 'g1;g2;...' to test survival");
    lp->callback([&] {
        action = [&] {
            lp_omega.offdiag = !lp_diag;
            const auto u = parse_lattice_vector(lp_u, lp_omega.n);
            const auto v = parse_lattice_vector(lp_v, lp_omega.n);
            const GaussianInt z = pair_form_exact(lp_omega, u, v);
            ojson j;
            j["value"] = z.re;
            j["imaginary_part"] = z.im;
            j["exact"] = true;
            if (!lp_sub.empty()) j["survives"] = cycle_survives(u, v, parse_sublattice(lp_sub, lp_omega.n));
            return j;
        };
    });

    std::string lv_config;
    HermitianFormSpec lv_omega;
    bool lv_diag = false;
    std::string lv_sub = "covering";
    auto* lv = lattice->add_subcommand("verdict", "search basis 2-cycles for an obstruction");
    lv->add_option("--config", lv_config, "JSON with n, d, offdiag, sublattice");
    lv->add_option("--n", lv_omega.n, "dimension")->capture_default_str();
    lv->add_option("--d", lv_omega.d, "diagonal weight")->capture_default_str();
    lv->add_flag("--diagonal-only", lv_diag, "drop the off-diagonal part of omega");
    lv->add_option("--sublattice", lv_sub, "covering | deck | 'g1;g2;...'")->capture_default_str();
    lv->callback([&] {
        action = [&] {
            HermitianFormSpec omega = lv_omega;
            omega.offdiag = !lv_diag;
            SublatticeDecl sub;
            if (!lv_config.empty()) {
                const ojson doc = read_json_file(lv_config);
                try {
                    omega.n = doc.at("n").get<int>();
                    omega.d = doc.at("d").get<std::int64_t>();
                    omega.offdiag = doc.value("offdiag", true);
                    const ojson& s = doc.value("sublattice", ojson("covering"));
                    if (s.is_string()) {
                        sub = parse_sublattice(s.get<std::string>(), omega.n);
                    } else {
                        for (const auto& g : s) sub.generators.push_back(parse_lattice_vector(g.get<std::string>(), omega.n));
                    }
                } catch (const ojson::exception& e) {
                    throw PreconditionError(std::string("malformed lattice config: ") + e.what());
                }
            } else {
                sub = parse_sublattice(lv_sub, omega.n);
            }
            return takayama_json(omega, takayama_verdict(omega, sub));
        };
    });

    // curve ---------------------------------------------------------------------
    auto* curve = app.add_subcommand("curve", "the entire curve zeta -> (e^zeta, e^{i zeta})")->require_subcommand(1);
    std::string cc_poly;
    std::string cc_shift;
    double cc_radius = 7.0;
    auto* cc = curve->add_subcommand("count", "zeros of P or F+_lambda along the curve in |zeta| < R");
    auto* cc_poly_opt = cc->add_option("--poly", cc_poly, "Laurent polynomial, e.g. 'z + w - 2'");
    cc->add_option("--stein-shift", cc_shift, "lambda for F+_lambda as 're,im'")->excludes(cc_poly_opt);
    cc->add_option("--radius", cc_radius, "R")->capture_default_str();
    auto curve_target = [](const std::string& poly, const std::string& shift) -> CurveTarget {
        if (!shift.empty()) return SteinShiftTarget{parse_complex(shift, "--stein-shift")};
        if (poly.empty()) throw PreconditionError("curve: give --poly or --stein-shift");
        return LaurentPoly::parse(poly);
    };
    cc->callback([&] {
        action = [&] {
            const CountResult r = count_intersections(curve_target(cc_poly, cc_shift), cc_radius, tol.budget());
            ojson j;
            j["count"] = r.count;
            j["radius"] = r.radius;
            j["requested_radius"] = cc_radius;
            j["residual"] = r.residual;
            j["samples_used"] = r.samples_used;
            return j;
        };
    });

    std::string cp_poly = "z + w - 2";
    std::string cp_zeta = "0,0";
    auto* cp = curve->add_subcommand("compose", "P pulled back to an exponential sum");
    cp->add_option("--poly", cp_poly, "Laurent polynomial")->capture_default_str();
    cp->add_option("--zeta", cp_zeta, "evaluation point 're,im'")->capture_default_str();
    cp->callback([&] {
        action = [&] {
            const LaurentPoly p = LaurentPoly::parse(cp_poly);
            const ExponentialSum g = compose_curve(p);
            ojson modes = ojson::array();
            for (const auto& m : g.modes()) {
                ojson e;
                e["frequency"] = complex_json(m.frequency);
                e["coefficient"] = complex_json(m.coefficient);
                modes.push_back(e);
            }
            ojson j;
            j["nondegenerate"] = nondegenerate(p);
            j["modes"] = modes;
            j["value"] = complex_json(g(parse_complex(cp_zeta, "--zeta")));
            return j;
        };
    });

    int ph_samples = 1000;
    double ph_half = kPi;
    auto* ph = curve->add_subcommand("phicheck", "randomized injectivity check of Phi");
    ph->add_option("--samples", ph_samples, "number of random pairs")->capture_default_str();
    ph->add_option("--halfwidth", ph_half, "sampling box half-width")->capture_default_str();
    ph->callback([&] {
        action = [&] {
            const InjectivityReport r = phi_injectivity(ph_samples, ph_half, seed);
            ojson j;
            j["injective"] = r.injective;
            j["samples"] = r.samples;
            j["halfwidth"] = ph_half;
            j["seed"] = r.seed;
            j["min_separation"] = r.min_separation;
            return j;
        };
    });

    // sweep ---------------------------------------------------------------------
    std::string sw_kind = "fplus";
    PointArgs sw_pt;
    double sw_rmin = 0.25;
    double sw_rmax = 4.0;
    int sw_nr = 9;
    int sw_nt = 16;
    std::string sw_poly = "z + w - 2";
    std::string sw_shift;
    auto* sw = app.add_subcommand("sweep", "CSV table over a parameter grid");
    sw->add_option("--kind", sw_kind, "fplus | curve")->check(CLI::IsMember({"fplus", "curve"}))->capture_default_str();
    add_point_options(sw, sw_pt);
    sw->add_option("--rmin", sw_rmin, "smallest radius")->capture_default_str();
    sw->add_option("--rmax", sw_rmax, "largest radius")->capture_default_str();
    sw->add_option("--nr", sw_nr, "number of radii")->capture_default_str();
    sw->add_option("--nt", sw_nt, "phases per radius (fplus)")->capture_default_str();
    sw->add_option("--poly", sw_poly, "polynomial (curve)")->capture_default_str();
    sw->add_option("--stein-shift", sw_shift, "lambda instead of a polynomial (curve)");
    sw->callback([&] {
        table_action = [&] {
            if (!(sw_rmin > 0.0) || !(sw_rmax >= sw_rmin) || sw_nr < 1 || sw_nt < 1) {
                throw PreconditionError("sweep: need 0 < rmin <= rmax, nr >= 1, nt >= 1");
            }
            auto radius = [&](int i) {
                return sw_nr == 1 ? sw_rmin
                                  : sw_rmin * std::pow(sw_rmax / sw_rmin, static_cast<double>(i) / (sw_nr - 1));
            };
            Table t;
            if (sw_kind == "fplus") {
                t.header = {"r", "phase", "w_re", "w_im", "value_re", "value_im", "abs_value", "rel_error_bound"};
                const BranchedPoint zb = sw_pt.branch();
                for (int i = 0; i < sw_nr; ++i) {
                    for (int k = 0; k < sw_nt; ++k) {
                        const double r = radius(i);
                        const double a = kTwoPi * k / sw_nt;
                        const cplx w = std::polar(r, a);
                        const EvalResult e = eval_fplus(zb, w, tol.budget());
                        t.rows.push_back({format_double(r), format_double(a), format_double(w.real()),
                                          format_double(w.imag()), format_double(e.value.real()),
                                          format_double(e.value.imag()), format_double(std::abs(e.value)),
                                          format_double(e.rel_error_bound)});
                    }
                }
            } else {
                t.header = {"requested_radius", "radius", "count", "residual"};
                const CurveTarget target = curve_target(sw_poly, sw_shift);
                for (int i = 0; i < sw_nr; ++i) {
                    const CountResult c = count_intersections(target, radius(i), tol.budget());
                    t.rows.push_back({format_double(radius(i)), format_double(c.radius), std::to_string(c.count),
                                      format_double(c.residual)});
                }
            }
            return t;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ConversionError& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (table_action) {
            const Table t = table_action();
            if (format != "json") {
                out << t.csv();
            } else {
                out << dump_json(t.json()) << "\n";
            }
        } else if (action) {
            out << dump_json(action()) << "\n";
        } else {
            err << "error: no subcommand selected\n";
            return kUsage;
        }
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NumericalError& e) {
        err << "numerical rejection: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}

}  // namespace okalab::cli
