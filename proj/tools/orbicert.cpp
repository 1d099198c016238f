// orbicert: certificates for presentations <x_1..x_d : u_1^m_1, ..., u_r^m_r>.
//
//   orbicert analyze FILE [--euler] [--witness W] [--json OUT] [--no-enum]
//   orbicert order FILE WORD
//   orbicert euler FILE

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "orbicert/analysis.hpp"

namespace {

using namespace orbicert;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonFlags {
    std::string file;
    std::size_t max_cosets = 1'000'000;
    Strategy strategy = Strategy::hlt;
    std::size_t max_cells = default_max_cells;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("file", f.file, "presentation file")->required();
    cmd->add_option("--max-cosets", f.max_cosets, "coset enumeration cap")
        ->check(CLI::PositiveNumber);
    std::map<std::string, Strategy> strategies{{"hlt", Strategy::hlt},
                                               {"felsch", Strategy::felsch}};
    cmd->add_option("--strategy", f.strategy, "hlt or felsch")
        ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
}

std::optional<CosetTable> closed_table(Presentation const& p, CommonFlags const& f) {
    auto result = enumerate(p, {f.max_cosets, f.strategy});
    if (auto* t = std::get_if<CosetTable>(&result)) {
        return *t;
    }
    auto const& stats = std::get<NonTermination>(result).stats;
    std::cerr << "coset enumeration hit the cap after " << stats.cosets_defined
              << " cosets; inconclusive\n";
    return std::nullopt;
}

int run_analyze(CommonFlags const& f, AnalyzeOptions opts,
                std::string const& witness_path, std::string const& json_path) {
    opts.limits = {f.max_cosets, f.strategy};
    opts.max_cells = f.max_cells;
    opts.source = f.file;
    if (!witness_path.empty()) {
        opts.witness_text = read_file(witness_path);
    }
    Analysis a = analyze(read_file(f.file), opts);
    std::cout << render_text(a.certificate);
    if (a.stats) {
        std::cout << "coset enumeration: " << (a.closed ? "closed" : "hit the cap")
                  << " after " << a.stats->cosets_defined << " definitions\n";
    }
    if (a.euler_error) {
        std::cout << "euler check: " << *a.euler_error << "\n";
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write " + json_path);
        }
        out << a.report.dump(2) << "\n";
    }
    return exit_code(a);
}

int run_order(CommonFlags const& f, std::string const& word_text) {
    Presentation p = parse_presentation(read_file(f.file));
    Word w = parse_word(word_text, p.generator_names);
    auto table = closed_table(p, f);
    if (!table) {
        return exit_inconclusive;
    }
    std::cout << element_order(*table, w) << "\n";
    return exit_ok;
}

int run_euler(CommonFlags const& f) {
    Presentation p = parse_presentation(read_file(f.file));
    auto table = closed_table(p, f);
    if (!table) {
        return exit_inconclusive;
    }
    try {
        EulerReport e = euler_identity_check(p, *table, f.max_cells);
        std::cout << render_euler(e);
        return e.identity_holds && e.b1_vanishes && e.b2_matches ? exit_ok
                                                                 : exit_violation;
    } catch (OrderMismatch const& e) {
        std::cout << "order mismatch: " << e.what() << "\n";
        return exit_violation;
    } catch (ComplexTooLarge const& e) {
        std::cerr << e.what() << "\n";
        return exit_inconclusive;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order-hypothesis verification and Euler-characteristic "
                 "certificates for group presentations"};
    app.set_version_flag("--version", std::string(orbicert::version));
    app.require_subcommand(1);

    CommonFlags analyze_flags;
    AnalyzeOptions opts;
    std::string witness_path;
    std::string json_path;
    auto* analyze_cmd = app.add_subcommand("analyze", "full certificate report");
    add_common(analyze_cmd, analyze_flags);
    analyze_cmd->add_flag("--euler", opts.euler, "verify the Euler identity on X");
    analyze_cmd->add_flag("--no-enum", opts.no_enum, "skip coset enumeration");
    analyze_cmd->add_flag("--deterministic", opts.deterministic, "zero the timings");
    analyze_cmd->add_option("--witness", witness_path, "permutation witness file");
    analyze_cmd->add_option("--json", json_path, "write the JSON report here");
    analyze_cmd->add_option("--max-cells", analyze_flags.max_cells, "cell cap for X")
        ->check(CLI::PositiveNumber);

    CommonFlags order_flags;
    std::string word_text;
    auto* order_cmd = app.add_subcommand("order", "order of a word in G");
    add_common(order_cmd, order_flags);
    order_cmd->add_option("word", word_text, "word such as x*y^-1")->required();

    CommonFlags euler_flags;
    auto* euler_cmd = app.add_subcommand("euler", "Betti numbers and Euler identity");
    add_common(euler_cmd, euler_flags);
    euler_cmd->add_option("--max-cells", euler_flags.max_cells, "cell cap for X")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input_error;
    }

    try {
        if (*analyze_cmd) {
            return run_analyze(analyze_flags, opts, witness_path, json_path);
        }
        if (*order_cmd) {
            return run_order(order_flags, word_text);
        }
        return run_euler(euler_flags);
    } catch (ParseError const& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (InvalidWitness const& e) {
        std::cerr << "invalid witness: " << e.what() << "\n";
    } catch (InputError const& e) {
        std::cerr << e.what() << "\n";
    } catch (std::invalid_argument const& e) {
        std::cerr << e.what() << "\n";
    }
    return exit_input_error;
}
