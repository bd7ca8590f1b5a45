#include "microasp/cli.hpp"

#include "microasp/default_logic.hpp"
#include "microasp/error.hpp"
#include "microasp/grounder.hpp"
#include "microasp/oracle.hpp"
#include "microasp/parser.hpp"
#include "microasp/printer.hpp"
#include "microasp/solver.hpp"
#include "microasp/theorybase.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace microasp::cli {

namespace {

/// Error carrying its own exit code, for problems found while running a command.
struct Failure {
    int code;
    std::string message;
};

struct Input {
    std::string name;
    std::string text;
};

Input read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return {"<stdin>", buf.str()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Failure{usage, "cannot open " + path};
    buf << file.rdbuf();
    return {path, buf.str()};
}

template <typename F>
auto parsing(const Input& input, F&& f) {
    try {
        return f(input.text);
    } catch (const ParseError& e) {
        throw Failure{parse_error, input.name + ":" + e.what()};
    }
}

int print_models(std::ostream& out, const ModelSet& ms, const AtomTable& atoms) {
    for (std::size_t i = 0; i < ms.models.size(); ++i) {
        out << "Answer: " << i + 1 << '\n' << model_text(ms.models[i], atoms) << '\n';
    }
    out << "Models: " << ms.models.size() << (ms.truncated ? "+" : "") << '\n';
    return ms.models.empty() ? unsatisfiable : satisfiable;
}

std::size_t oracle_limit(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    const char* env = std::getenv("MICROASP_ORACLE_LIMIT");
    if (!env || !*env) return default_oracle_limit;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Failure{usage, std::string("MICROASP_ORACLE_LIMIT is not a number: ") + env};
    return static_cast<std::size_t>(v);
}

dl::Lit parse_lit(const std::string& text) {
    const bool negative = !text.empty() && text[0] == '-';
    try {
        return {parse_atom(negative ? text.substr(1) : text).str(), !negative};
    } catch (const ParseError& e) {
        throw Failure{usage, "bad literal '" + text + "': " + e.message()};
    }
}

std::string lits_text(const dl::LitSet& s) {
    if (s.inconsistent) return "INCONSISTENT";
    std::string out;
    for (const auto& l : s.lits) out += (out.empty() ? "" : " ") + l.str();
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"microasp: ground, solve and check answer-set programs", "microasp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    std::function<int()> action;
    std::string file;
    auto add_file = [&file](CLI::App* sub) {
        sub->add_option("file", file, "Input file, - for stdin")->required();
    };

    // ground
    bool stats = false, text = false, no_simplify = false;
    auto* ground_cmd = app.add_subcommand("ground", "Print the ground program");
    add_file(ground_cmd);
    auto* stats_opt = ground_cmd->add_flag("--stats", stats, "Print atoms=N rules=M bodyliterals=K");
    ground_cmd->add_flag("--text", text, "Print the ground program (default)")->excludes(stats_opt);
    ground_cmd->add_flag("--no-simplify", no_simplify, "Keep literals the grounder could remove");
    ground_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto gp = ground(parsing(input, parse_program), GroundOptions{!no_simplify});
            out << (stats ? to_string(ground_stats(gp)) + "\n" : to_string(gp));
            return int{ok};
        };
    });

    // solve
    std::size_t max_models = 1;
    std::string heuristic = "occurrence";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> conflict_limit;
    bool lookahead = false;
    auto* solve_cmd = app.add_subcommand("solve", "Enumerate stable models");
    add_file(solve_cmd);
    solve_cmd->add_option("-n,--models", max_models, "Number of models, 0 for all")->capture_default_str();
    solve_cmd->add_option("--heuristic", heuristic, "Branching heuristic")
        ->check(CLI::IsMember({"occurrence", "first-unassigned"}))
        ->capture_default_str();
    solve_cmd->add_option("--seed", seed, "Tie-breaking seed, 0 for lowest atom id");
    solve_cmd->add_option("--conflict-limit", conflict_limit, "Give up after this many conflicts");
    solve_cmd->add_flag("--lookahead", lookahead, "Failed-literal probing at every node");
    solve_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto gp = ground(parsing(input, parse_program));
            SearchConfig cfg;
            cfg.max_models = max_models;
            cfg.heuristic = *parse_heuristic(heuristic);
            cfg.seed = seed;
            cfg.conflict_limit = conflict_limit;
            cfg.lookahead = lookahead;
            try {
                return print_models(out, solve(gp, cfg), gp.atoms);
            } catch (const IncompleteResult& e) {
                ModelSet partial = e.partial();
                partial.truncated = true;
                print_models(out, partial, gp.atoms);
                err << "error: " << e.what() << '\n';
                return int{ok};
            }
        };
    });

    // check
    std::string model_arg;
    auto* check_cmd = app.add_subcommand("check", "Test whether a set of atoms is a stable model");
    add_file(check_cmd);
    check_cmd->add_option("--model", model_arg, "Space-separated ground atoms")->required();
    check_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto gp = ground(parsing(input, parse_program));
            Model m;
            bool known = true;
            std::istringstream words(model_arg);
            for (std::string w; words >> w;) {
                Atom a;
                try {
                    a = parse_atom(w);
                } catch (const ParseError& e) {
                    throw Failure{parse_error, "--model: " + std::string(e.what())};
                }
                // an atom the grounder never produced has no rule and cannot be in a stable model
                if (auto id = gp.atoms.find(a)) {
                    m.push_back(*id);
                } else {
                    known = false;
                }
            }
            std::sort(m.begin(), m.end());
            m.erase(std::unique(m.begin(), m.end()), m.end());
            out << (known && check_model(gp, m) ? "STABLE" : "NOT STABLE") << '\n';
            return int{ok};
        };
    });

    // oracle
    std::optional<std::size_t> limit;
    auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate stable models by brute force");
    add_file(oracle_cmd);
    oracle_cmd->add_option("--limit", limit, "Largest atom count to enumerate (default 20)");
    oracle_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto gp = ground(parsing(input, parse_program));
            return print_models(out, enumerate_bruteforce(gp, oracle_limit(limit)), gp.atoms);
        };
    });

    // complete
    auto* complete_cmd = app.add_subcommand("complete", "Print the Clark completion and tightness");
    add_file(complete_cmd);
    complete_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto gp = ground(parsing(input, parse_program));
            out << to_string(clark_completion(gp), gp.atoms) << (is_tight(gp) ? "TIGHT" : "NOT TIGHT") << '\n';
            return int{ok};
        };
    });

    // bench
    std::string problem, graph_text, emit = "program";
    std::optional<std::int64_t> k;
    bool no_killing = false;
    auto* bench_cmd = app.add_subcommand("bench", "Generate a graph-problem benchmark");
    bench_cmd->add_option("--problem", problem, "coloring, hamiltonian, kernel, independentset or vertexcover")
        ->required()
        ->check(CLI::IsMember({"coloring", "hamiltonian", "kernel", "independentset", "vertexcover"}));
    bench_cmd->add_option("--graph", graph_text, "Graph family, e.g. cycle(8) or random(10,20,42)")->required();
    bench_cmd->add_option("--k", k, "Colors, or the set-size bound");
    bench_cmd->add_option("--emit", emit, "program, default or graph")
        ->check(CLI::IsMember({"program", "default", "graph"}))
        ->capture_default_str();
    bench_cmd->add_flag("--no-killing", no_killing, "Coloring theory without the killing defaults");
    bench_cmd->callback([&] {
        action = [&] {
            BenchmarkSpec spec;
            spec.problem = *parse_problem(problem);
            spec.graph = make_graph(graph_text);
            spec.k = k;
            spec.killing_defaults = !no_killing;
            if (emit == "graph") {
                out << spec.graph.to_text();
            } else if (emit == "default") {
                out << dl::to_string(encode_default_theory(spec));
            } else {
                out << to_string(encode_program(spec));
            }
            return int{ok};
        };
    });

    // dl-solve
    auto* dl_solve_cmd = app.add_subcommand("dl-solve", "Enumerate extensions of a default theory");
    add_file(dl_solve_cmd);
    dl_solve_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            const auto es = dl::extensions(parsing(input, parse_default_theory));
            for (std::size_t i = 0; i < es.extensions.size(); ++i) {
                out << "Extension: " << i + 1 << '\n' << lits_text(es.extensions[i].literals) << '\n';
            }
            out << "Extensions: " << es.extensions.size() << '\n';
            return es.extensions.empty() ? int{unsatisfiable} : int{satisfiable};
        };
    });

    // dl-query
    std::string lit_text, mode = "brave";
    auto* dl_query_cmd = app.add_subcommand("dl-query", "Brave or skeptical membership of a literal");
    add_file(dl_query_cmd);
    dl_query_cmd->add_option("--lit", lit_text, "Literal, e.g. a or -a")->required();
    dl_query_cmd->add_option("--mode", mode, "brave or skeptical")
        ->check(CLI::IsMember({"brave", "skeptical"}))
        ->capture_default_str();
    dl_query_cmd->callback([&] {
        action = [&] {
            const dl::Lit lit = parse_lit(lit_text);
            const auto input = read_input(file, in);
            const auto theory = parsing(input, parse_default_theory);
            const bool yes =
                dl::query(theory, lit, mode == "brave" ? dl::QueryMode::Brave : dl::QueryMode::Skeptical);
            out << (yes ? "YES" : "NO") << '\n';
            return yes ? int{satisfiable} : int{unsatisfiable};
        };
    });

    // translate
    std::string to;
    auto* translate_cmd = app.add_subcommand("translate", "Translate a program into a default theory");
    add_file(translate_cmd);
    translate_cmd->add_option("--to", to, "Target format")->required()->check(CLI::IsMember({"default"}));
    translate_cmd->callback([&] {
        action = [&] {
            const auto input = read_input(file, in);
            out << dl::to_string(dl::program_to_defaults(ground(parsing(input, parse_program))));
            return int{ok};
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        return action();
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return validation;
    } catch (const UnsupportedFeature& e) {
        err << "error: " << e.what() << '\n';
        return unsupported;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return unsupported;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
}

}  // namespace microasp::cli
