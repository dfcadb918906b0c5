// Command-line front end: potentials, periods, mutations, TQFT tables.
// Exit codes: 0 ok, 2 invalid input, 3 verification failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gpot/gpot.hpp"

using namespace gpot;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kVerifyFailed = 3;

ColoredGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open graph file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ColoredGraph g = graph_from_json_text(buf.str());
    require_valid(g);
    return g;
}

std::string exponent_key(const Exponent& e) {
    std::string s = "[";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + "]";
}

ojson poly_json(const RationalPoly& p) {
    ojson j;
    j["vars"] = p.vars();
    j["terms"] = ojson::object();
    for (const auto& [e, c] : p.terms()) j["terms"][exponent_key(e)] = c.str();
    return j;
}

void print_poly(const RationalPoly& p, const std::string& format) {
    if (format == "json") std::cout << poly_json(p).dump(2) << "\n";
    else std::cout << p.to_string() << "\n";
}

ojson certificate_json(const MutationCertificate& c) {
    ojson j;
    j["edge"] = c.edge;
    j["case"] = c.colored ? "colored" : "uncolored";
    j["slots"] = c.slots;
    j["mu"] = poly_json(c.mu);
    j["nu"] = poly_json(c.nu);
    j["mu_prime"] = poly_json(c.mu_prime);
    j["nu_prime"] = poly_json(c.nu_prime);
    j["substitution"] = {{"numerator", poly_json(c.substitution.numerator())},
                         {"denominator", poly_json(c.substitution.denominator())}};
    j["product_identity_checked"] = c.product_identity_checked;
    return j;
}

void print_periods(const PeriodSequence& s, const std::string& format) {
    if (format == "csv") {
        std::cout << "k,pi\n";
        for (int k = 0; k <= s.order; ++k) std::cout << k << "," << s.pi[static_cast<std::size_t>(k)] << "\n";
    } else if (format == "text") {
        for (int k = 0; k <= s.order; ++k) std::cout << k << " " << s.pi[static_cast<std::size_t>(k)] << "\n";
    } else {
        ojson j = ojson::object();
        for (int k = 0; k <= s.order; ++k) j[std::to_string(k)] = s.pi[static_cast<std::size_t>(k)].str();
        std::cout << j.dump(2) << "\n";
    }
}

ojson state_json(const BoundaryState& s) {
    ojson j;
    j["leaves"] = s.leaf_vars;
    j["order"] = s.order;
    j["coeffs"] = ojson::array();
    for (const auto& c : s.value.coeffs()) j["coeffs"].push_back(poly_json(c)["terms"]);
    return j;
}

std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw structural_error("expected vertex=slot, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::vector<int> parities(const std::string& p) {
    if (p == "0") return {0};
    if (p == "1") return {1};
    if (p == "both") return {0, 1};
    throw structural_error("parity must be 0, 1 or both");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph potentials, periods and TQFT kernels"};
    app.require_subcommand(1);

    std::string graph_path;
    std::string format = "text";
    int order = 8;
    int genus = 2;
    std::string parity = "1";
    std::string method = "tqft";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    int brute_cap = 16;
    bool force = false;
    std::string edge;
    std::string leaf_a;
    std::string leaf_b;
    int genus_max = 6;
    std::vector<std::string> distinguished;

    auto add_threads = [&](CLI::App* c) {
        c->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* potential = app.add_subcommand("potential", "print the graph potential");
    potential->add_option("--graph", graph_path, "graph JSON file")->required();
    potential->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* period = app.add_subcommand("period", "period sequence pi_0..pi_K");
    auto* period_graph = period->add_option("--graph", graph_path, "graph JSON file");
    period->add_option("--genus", genus, "genus (trace formula input)")->excludes(period_graph);
    period->add_option("--parity", parity, "coloring parity 0|1")->check(CLI::IsMember({"0", "1"}));
    period->add_option("--order", order, "highest k")->check(CLI::NonNegativeNumber);
    period->add_option("--method", method, "brute|tqft|both")->check(CLI::IsMember({"brute", "tqft", "both"}));
    period->add_option("--format", format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
    period->add_option("--brute-cap", brute_cap, "largest order brute force accepts above 3 variables");
    period->add_flag("--force", force, "ignore the brute-force cap");
    add_threads(period);

    auto* mutate_cmd = app.add_subcommand("mutate", "elementary transformation with certificate");
    mutate_cmd->add_option("--graph", graph_path, "graph JSON file")->required();
    mutate_cmd->add_option("--edge", edge, "internal edge id")->required();

    auto* verify = app.add_subcommand("verify", "symbolic checks");
    verify->require_subcommand(1);
    auto* verify_mut = verify->add_subcommand("mutation", "verify the mutation identities");
    verify_mut->add_option("--graph", graph_path, "graph JSON file")->required();
    verify_mut->add_option("--edge", edge, "internal edge id (default: every non-loop edge)");
    auto* verify_col = verify->add_subcommand("coloring", "verify the coloring-change identity");
    verify_col->add_option("--graph", graph_path, "graph JSON file")->required();

    auto* table = app.add_subcommand("table", "trace-formula period table as CSV");
    table->add_option("--genus-max", genus_max, "largest genus")->check(CLI::Range(2, 64));
    table->add_option("--order", order, "highest k")->check(CLI::NonNegativeNumber);
    table->add_option("--parity", parity, "0|1|both")->check(CLI::IsMember({"0", "1", "both"}));
    add_threads(table);

    auto* kernel = app.add_subcommand("kernel", "T1 kernel entries as JSON");
    kernel->add_option("--order", order, "truncation order")->check(CLI::NonNegativeNumber);

    auto* grassmann = app.add_subcommand("grassmann", "tau -> 0 limit of a genus-0 graph potential");
    grassmann->add_option("--graph", graph_path, "graph JSON file")->required();
    grassmann->add_option("--distinguished", distinguished, "vertex=slot pairs")->required();
    grassmann->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* wdvv = app.add_subcommand("wdvv", "four-point symmetry check");
    wdvv->add_option("--order", order, "truncation order")->check(CLI::NonNegativeNumber);
    wdvv->add_option("--parity", parity, "0|1|both")->check(CLI::IsMember({"0", "1", "both"}));

    auto* glue_cmd = app.add_subcommand("glue", "join two leaves of a graph's boundary state");
    glue_cmd->add_option("--graph", graph_path, "graph JSON file")->required();
    glue_cmd->add_option("--leaf-a", leaf_a, "first leaf")->required();
    glue_cmd->add_option("--leaf-b", leaf_b, "second leaf")->required();
    glue_cmd->add_option("--order", order, "truncation order")->check(CLI::NonNegativeNumber);
    add_threads(glue_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }
    if (wdvv->parsed() && !wdvv->count("--parity")) parity = "both";
    if (table->parsed() && !table->count("--parity")) parity = "both";

    try {
        if (potential->parsed()) {
            print_poly(graph_potential(load_graph(graph_path)).potential, format);
        } else if (period->parsed()) {
            const int par = std::stoi(parity);
            ColoredGraph g;
            const bool from_graph = !graph_path.empty();
            if (from_graph) g = load_graph(graph_path);
            else if (method != "tqft") g = closed_necklace(genus, par);

            PeriodSequence tq;
            PeriodSequence br;
            if (method != "brute") {
                if (from_graph) tq = periods_of_graph(g, order, PeriodMethod::tqft, threads);
                else tq = periods_from_laplace(trace_formula(genus, par, order, threads));
            }
            if (method != "tqft") {
                const auto vars = graph_vars(g).size();
                if (vars > 3 && order > brute_cap && !force)
                    throw structural_error("brute force on " + std::to_string(vars) + " variables above order " +
                                           std::to_string(brute_cap) + " needs --force");
                br = periods_of_graph(g, order, PeriodMethod::brute, threads);
            }
            if (method == "both" && tq != br) {
                std::cerr << "methods disagree\nbrute:\n";
                print_periods(br, "text");
                std::cerr << "tqft:\n";
                print_periods(tq, "text");
                return kVerifyFailed;
            }
            print_periods(method == "brute" ? br : tq, format);
        } else if (mutate_cmd->parsed()) {
            const auto b = graph_potential(load_graph(graph_path));
            auto [target, cert] = mutate(b, edge);
            ojson j;
            j["graph"] = ojson::parse(graph_to_json(target.graph).dump());
            j["certificate"] = certificate_json(cert);
            std::cout << j.dump(2) << "\n";
        } else if (verify_mut->parsed()) {
            const auto b = graph_potential(load_graph(graph_path));
            std::vector<std::string> edges;
            if (!edge.empty()) edges.push_back(edge);
            else
                for (const auto& e : b.graph.edges)
                    if (!e.is_loop()) edges.push_back(e.id);
            ojson out = ojson::array();
            bool all_ok = true;
            for (const auto& e : edges) {
                const bool ok = verify_mutation(b, e);
                all_ok = all_ok && ok;
                ojson j = certificate_json(mu_nu_factors(b, e));
                j["verified"] = ok;
                out.push_back(j);
            }
            std::cout << out.dump(2) << "\n";
            if (!all_ok) return kVerifyFailed;
        } else if (verify_col->parsed()) {
            const ColoredGraph g = load_graph(graph_path);
            const RationalPoly w = graph_potential(g).potential;
            bool all_ok = true;
            ojson j;
            j["edges"] = ojson::object();
            for (const auto& e : g.edges) {
                const bool ok = w.invert_var(e.id) == graph_potential(coloring_boundary_move(g, e.id)).potential;
                j["edges"][e.id] = ok;
                all_ok = all_ok && ok;
            }
            auto [normal, moves] = normalize_coloring(g);
            const bool same = periods_bruteforce(w, 4) == periods_bruteforce(graph_potential(normal).potential, 4);
            j["normalized"] = ojson::parse(graph_to_json(normal).dump());
            j["moves"] = moves;
            j["parity"] = g.color_sum();
            std::cout << j.dump(2) << "\n";
            if (!all_ok || !same) return kVerifyFailed;
        } else if (table->parsed()) {
            const auto ps = parities(parity);
            const auto tab = trace_table(genus_max, order, threads);
            std::cout << "k";
            for (int g = 2; g <= genus_max; ++g)
                for (int e : ps) std::cout << ",g" << g << "e" << e;
            std::cout << "\n";
            std::map<std::pair<int, int>, PeriodSequence> seqs;
            for (const auto& [key, s] : tab) seqs.emplace(key, periods_from_laplace(s));
            for (int k = 0; k <= order; ++k) {
                std::cout << k;
                for (int g = 2; g <= genus_max; ++g)
                    for (int e : ps) std::cout << "," << seqs.at({g, e}).pi[static_cast<std::size_t>(k)];
                std::cout << "\n";
            }
        } else if (kernel->parsed()) {
            const KernelMatrix a = t1_kernel(order);
            ojson j;
            j["order"] = order;
            j["entries"] = ojson::array();
            for (int i = -order; i <= order; ++i)
                for (int k = -order; k <= order; ++k) {
                    ojson coeffs = ojson::array();
                    bool any = false;
                    for (int d = 0; d <= order; ++d) {
                        coeffs.push_back(a.coeff(i, k, d).str());
                        any = any || !a.coeff(i, k, d).is_zero();
                    }
                    if (any) j["entries"].push_back({{"i", i}, {"j", k}, {"coeffs", coeffs}});
                }
            std::cout << j.dump(2) << "\n";
        } else if (grassmann->parsed()) {
            print_poly(grassmannian_limit(load_graph(graph_path), parse_assignments(distinguished)), format);
        } else if (wdvv->parsed()) {
            bool all_ok = true;
            for (int p : parities(parity)) {
                const bool ok = wdvv_check(p, order);
                all_ok = all_ok && ok;
                if (!ok) std::cout << "FAIL parity " << p << "\n";
            }
            if (!all_ok) return kVerifyFailed;
            std::cout << (parity == "both" ? "OK both parities" : "OK parity " + parity) << "\n";
        } else if (glue_cmd->parsed()) {
            const ColoredGraph g = load_graph(graph_path);
            std::cout << state_json(glue(k_state(g, order, threads), leaf_a, leaf_b)).dump(2) << "\n";
        }
    } catch (const structural_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const consistency_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
