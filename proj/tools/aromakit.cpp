// aromakit: aromatic-forest calculus from the command line.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "aromakit/acceptance.hpp"
#include "aromakit/evaldiff.hpp"
#include "aromakit/genfun.hpp"
#include "aromakit/homotopy.hpp"
#include "aromakit/spaces.hpp"

using namespace aromakit;
using nlohmann::json;

namespace {

enum class Format { text, json_fmt, csv };

json combo_to_json(const FormCombo& c) { return json::parse(to_json(c)); }

void emit_combo(const FormCombo& c, Format fmt) {
    switch (fmt) {
        case Format::text: std::cout << to_string(c) << "\n"; break;
        case Format::json_fmt: std::cout << combo_to_json(c).dump() << "\n"; break;
        case Format::csv:
            std::cout << "coeff,forest\n";
            for (auto& [f, v] : c.terms()) std::cout << to_string(v) << ",\"" << print(f) << "\"\n";
            break;
    }
}

std::map<Forest, Rational> coeffs_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j = json::parse(in);
    if (j.is_object() && j.contains("coefficients")) j = j["coefficients"];
    std::map<Forest, Rational> coeffs;
    for (auto& entry : j)
        coeffs[parse(entry.at("forest").get<std::string>())] =
            parse_rational(entry.at("coeff").get<std::string>());
    return coeffs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for aromatic forests, forms and their divergence calculus"};
    app.require_subcommand(1);

    int N = 3, n = 1, p = 0, max_order = 8;
    unsigned long long seed = 20240811ULL;
    bool divfree = false;
    std::string input, format_name = "text", field_path, mode;

    auto add_common = [&](CLI::App* cmd, bool with_grade) {
        cmd->add_option("--format,-f", format_name, "text, json or csv");
        if (with_grade) {
            cmd->add_option("--order,-N", N, "number of nodes");
            cmd->add_option("--roots,-n", n, "number of roots");
            cmd->add_option("--covertices,-p", p, "number of covertices");
            cmd->add_flag("--divfree", divfree, "work modulo 1-loops");
        }
    };

    auto* enumerate = app.add_subcommand("enumerate", "list the canonical forests of a grade");
    add_common(enumerate, true);

    auto* dims = app.add_subcommand("dims", "dimension of a graded piece");
    add_common(dims, true);

    auto* tables = app.add_subcommand("tables", "dimension tables from the counting series");
    tables->add_option("--max-order", max_order, "largest order");
    add_common(tables, false);

    auto* dh = app.add_subcommand("dh", "horizontal derivative of a combination");
    dh->add_option("input", input, "forest or combination")->required();
    add_common(dh, false);

    auto* dv = app.add_subcommand("dv", "vertical derivative of a combination");
    dv->add_option("input", input, "forest or combination")->required();
    add_common(dv, false);

    auto* euler = app.add_subcommand("euler", "Euler operators");
    euler->add_option("mode", mode, "E, Estar, Er or I")->required();
    euler->add_option("input", input, "forest or combination")->required();
    add_common(euler, false);

    auto* homotopy = app.add_subcommand("homotopy", "homotopy operators");
    homotopy->add_option("mode", mode, "hH, hV, ibp, divfree or aug")->required();
    homotopy->add_option("input", input, "forest or combination")->required();
    add_common(homotopy, false);

    auto* solenoidal = app.add_subcommand("solenoidal", "solenoidal generators or basis");
    solenoidal->add_option("mode", mode, "gen or basis")->required();
    add_common(solenoidal, true);

    auto* divbasis = app.add_subcommand("divergence-basis", "basis of the scalar divergences");
    add_common(divbasis, true);

    auto* annihilators = app.add_subcommand("annihilators", "dual vectors vanishing on divergences");
    add_common(annihilators, true);

    auto* exactness = app.add_subcommand("exactness", "exactness survey of the order-N bicomplex");
    add_common(exactness, true);

    auto* vp = app.add_subcommand("vp-check", "volume-preservation certificate");
    vp->add_option("coeffs", field_path, "JSON coefficient map")->required();
    vp->add_option("--order", max_order, "largest order to certify");
    vp->add_flag("--divfree", divfree, "certify against the divergence-free spaces");
    add_common(vp, false);

    auto* eval = app.add_subcommand("eval", "elementary differential on a polynomial field");
    eval->add_option("input", input, "forest or combination")->required();
    eval->add_option("--field", field_path, "JSON vector field")->required();
    add_common(eval, false);

    auto* check = app.add_subcommand("check-paper", "run the full verification battery");
    check->add_option("--seed", seed, "unused; kept for interface stability");

    CLI11_PARSE(app, argc, argv);

    Format fmt = Format::text;
    if (format_name == "json") fmt = Format::json_fmt;
    else if (format_name == "csv") fmt = Format::csv;
    else if (format_name != "text") {
        std::cerr << "unknown format: " << format_name << "\n";
        return 1;
    }

    try {
        if (*enumerate) {
            auto forests = generate(N, n, p, divfree);
            if (fmt == Format::json_fmt) {
                json out = json::array();
                for (auto& f : forests) out.push_back(print(f));
                std::cout << out.dump() << "\n";
            } else {
                for (auto& f : forests) std::cout << print(f) << "\n";
            }
        } else if (*dims) {
            std::cout << basis(N, n, p, divfree).dim() << "\n";
        } else if (*tables) {
            auto tab = dimension_table(max_order);
            const char* sep = fmt == Format::csv ? "," : "  ";
            if (fmt == Format::json_fmt) {
                json out;
                for (int i = 0; i < tab.K; ++i) {
                    out["solenoidal"].push_back({{"N", i + 1},
                                                 {"omega1", tab.omega1[i].str()},
                                                 {"ring0", tab.ring0[i].str()},
                                                 {"psi", tab.psi[i].str()},
                                                 {"psi_tilde", tab.psi_tilde[i].str()}});
                }
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "N" << sep << "omega1" << sep << "ring0" << sep << "psi" << sep
                          << "psi_tilde" << "\n";
                for (int i = 0; i < tab.K; ++i)
                    std::cout << i + 1 << sep << tab.omega1[i] << sep << tab.ring0[i] << sep
                              << tab.psi[i] << sep << tab.psi_tilde[i] << "\n";
                std::cout << "\nN";
                for (int nn = 4; nn >= 0; --nn) std::cout << sep << "p0_n" << nn;
                for (int nn = 4; nn >= 0; --nn) std::cout << sep << "p1_n" << nn;
                std::cout << sep << "I1" << "\n";
                for (int i = 0; i < std::min(tab.K, 9); ++i) {
                    std::cout << i + 1;
                    for (auto& v : tab.row0[i]) std::cout << sep << v;
                    for (auto& v : tab.row1[i]) std::cout << sep << v;
                    std::cout << sep << tab.functional1[i] << "\n";
                }
            }
        } else if (*dh) {
            emit_combo(dH(parse_combo(input)), fmt);
        } else if (*dv) {
            emit_combo(dV(parse_combo(input)), fmt);
        } else if (*euler) {
            FormCombo c = parse_combo(input);
            if (mode == "E") emit_combo(euler_E(c), fmt);
            else if (mode == "Estar") emit_combo(euler_Estar(c), fmt);
            else if (mode == "Er") emit_combo(euler_E_root(c), fmt);
            else if (mode == "I") emit_combo(interior_euler(c), fmt);
            else throw std::invalid_argument("euler mode must be E, Estar, Er or I");
        } else if (*homotopy) {
            FormCombo c = parse_combo(input);
            if (mode == "hH") emit_combo(h_H(c), fmt);
            else if (mode == "hV") emit_combo(h_V(c), fmt);
            else if (mode == "ibp") emit_combo(ibp_homotopy(c), fmt);
            else if (mode == "aug") emit_combo(aug_h_H(c), fmt);
            else if (mode == "divfree") {
                auto r = h_H_divfree(c);
                if (fmt == Format::json_fmt) {
                    std::cout << json{{"h", combo_to_json(r.h)}, {"remainder", combo_to_json(r.r)}}
                                     .dump()
                              << "\n";
                } else {
                    std::cout << "h: " << to_string(r.h) << "\n";
                    std::cout << "remainder: " << to_string(r.r) << "\n";
                }
            } else throw std::invalid_argument("homotopy mode must be hH, hV, ibp, divfree or aug");
        } else if (*solenoidal) {
            std::vector<FormCombo> out;
            if (mode == "gen") out = solenoidal_generators(N, divfree);
            else if (mode == "basis") out = solenoidal_basis(N);
            else throw std::invalid_argument("solenoidal mode must be gen or basis");
            if (fmt == Format::json_fmt) {
                json arr = json::array();
                for (auto& c : out) arr.push_back(combo_to_json(c));
                std::cout << arr.dump() << "\n";
            } else {
                for (auto& c : out) std::cout << to_string(c) << "\n";
            }
        } else if (*divbasis) {
            for (auto& el : divergence_basis(N)) {
                if (fmt == Format::json_fmt)
                    std::cout << json{{"alpha", print(el.alpha)}, {"combo", combo_to_json(el.combo)}}
                                     .dump()
                              << "\n";
                else
                    std::cout << print(el.alpha) << "  ->  " << to_string(el.combo) << "\n";
            }
        } else if (*annihilators) {
            for (auto& fn : annihilator_div_basis(N)) emit_combo(fn, fmt);
        } else if (*exactness) {
            auto rep = exactness_report(N, std::max(n, 1), std::max(p, 1), divfree);
            auto show = [&](const char* kind, const ExactnessPoint& pt) {
                std::cout << kind << " at (n=" << pt.n << ",p=" << pt.p << "): dim " << pt.dim
                          << ", ker " << pt.ker << ", im " << pt.im
                          << (pt.defect() ? "  DEFECT " + std::to_string(pt.defect()) : "")
                          << "\n";
            };
            for (auto& pt : rep.horizontal) show("horizontal", pt);
            for (auto& pt : rep.vertical) show("vertical", pt);
            for (auto& pt : rep.augmented) show("augmented", pt);
            for (auto& [pp, alt] : rep.augmented_alternating)
                std::cout << "augmented row p=" << pp << ": alternating sum " << alt
                          << (alt ? "  DEFECT" : "") << "\n";
            for (auto& w : rep.defect_witness)
                std::cout << "defect witness: " << to_string(w) << "\n";
            bool exact = rep.horizontal_exact() && rep.vertical_exact();
            std::cout << (exact ? "horizontal and vertical sequences exact"
                                : "sequences NOT exact")
                      << "\n";
            return exact ? 0 : 2;
        } else if (*vp) {
            auto cert = vp_certificate(coeffs_from_json(field_path), max_order, divfree);
            if (cert.feasible) {
                for (auto& [k, eta] : cert.eta)
                    std::cout << "order " << k << ": eta = " << to_string(eta) << "\n";
                std::cout << "volume-preservation certificate complete\n";
                return 0;
            }
            std::cout << "infeasible at order " << cert.failure->order << "\n";
            std::cout << "separating scalar: " << print(cert.failure->witness_scalar) << "\n";
            std::cout << "functional: " << to_string(cert.failure->functional) << "\n";
            std::cout << "pairing: " << to_string(cert.failure->pairing) << "\n";
            return 2;
        } else if (*eval) {
            std::ifstream in(field_path);
            if (!in) throw std::invalid_argument("cannot open " + field_path);
            std::stringstream buf;
            buf << in.rdbuf();
            PolyVectorField f = field_from_json(buf.str());
            PolyTensor t = elementary_differential(parse_combo(input), f);
            if (fmt == Format::json_fmt) {
                json out = json::array();
                for (auto& [idx, poly] : t.components()) {
                    json comp;
                    for (int i : idx) comp["index"].push_back(i + 1);
                    comp["value"] = to_string(poly);
                    out.push_back(comp);
                }
                std::cout << out.dump() << "\n";
            } else {
                if (t.is_zero()) std::cout << "0\n";
                for (auto& [idx, poly] : t.components()) {
                    std::cout << "[";
                    for (size_t i = 0; i < idx.size(); ++i)
                        std::cout << (i ? "," : "") << idx[i] + 1;
                    std::cout << "] " << to_string(poly) << "\n";
                }
            }
        } else if (*check) {
            int failures = run_acceptance_main(std::cout);
            return failures == 0 ? 0 : 2;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
