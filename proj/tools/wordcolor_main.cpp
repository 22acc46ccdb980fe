// wordcolor: generate infinite words, analyze their factor structure, and
// verify factor colorings against monochromatic factorizations on a finite
// window.
//
// Exit codes: 0 = success (verify: ALL-SATURATED), 1 = verify found a growing
// color, 2 = error. All positions printed are 1-based.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wordcolor/analysis.hpp"
#include "wordcolor/coloring.hpp"
#include "wordcolor/report.hpp"
#include "wordcolor/verifier.hpp"
#include "wordcolor/wordspec.hpp"

using namespace wordcolor;
using nlohmann::json;

namespace {

struct Options {
    std::string word;
    std::string coloring;
    std::string what;
    std::string format = "text";
    std::string out;
    std::string u = "";
    std::string letter = "";
    std::size_t n = 64;
    std::size_t window = 10000;
    std::size_t max_block = 0;
    std::size_t gap_bound = 8;
    std::size_t t = 3;
    std::size_t big_m = 16;
    std::size_t max_steps = 8;
    bool timing = false;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + opt.out);
        f << text;
    }
}

void emit_report(const Options& opt, const json& rep, const std::string& text_form) {
    if (opt.format == "json")
        emit(opt, rep.dump(2) + "\n");
    else
        emit(opt, text_form);
}

void check_format(const Options& opt, bool csv_ok) {
    if (opt.format == "text" || opt.format == "json") return;
    if (opt.format == "csv" && csv_ok) return;
    throw std::invalid_argument("unsupported --format '" + opt.format + "'");
}

int run_gen(const Options& opt) {
    check_format(opt, false);
    InfiniteWord x = parse_word_spec(opt.word);
    Word prefix = x.prefix(opt.n);
    if (opt.format == "json") {
        json rep = report::base_report(x.label(), opt.n, "gen", 0);
        rep["prefix"] = prefix;
        emit(opt, rep.dump(2) + "\n");
    } else {
        emit(opt, prefix + "\n");
    }
    return 0;
}

json analyze_payload(const Options& opt, const InfiniteWord& x) {
    const std::size_t n = opt.window;
    json result;
    if (opt.what == "complexity") {
        FactorIndex idx(x, n);
        json table = json::array();
        std::size_t upto = std::min<std::size_t>(100, idx.n_max());
        for (std::size_t k = 1; k <= upto; ++k)
            table.push_back({{"n", k}, {"lambda", idx.complexity(k)}});
        result["complexity"] = table;
    } else if (opt.what == "specials") {
        FactorIndex idx(x, n);
        std::size_t len = std::min<std::size_t>(opt.n, idx.n_max());
        json left = json::array(), right = json::array();
        for (const auto& f : special_factors(idx, len, Side::left))
            left.push_back(f);
        for (const auto& f : special_factors(idx, len, Side::right))
            right.push_back(f);
        result["length"] = len;
        result["left_special"] = left;
        result["right_special"] = right;
    } else if (opt.what == "balance") {
        FactorIndex idx(x, n);
        std::size_t upto = std::min<std::size_t>(opt.n ? opt.n : 60, idx.n_max());
        auto r = is_balanced(idx, upto);
        result["balanced"] = r.balanced;
        result["checked_up_to"] = upto;
        if (!r.balanced)
            result["witness"] = {{"u", r.u}, {"v", r.v},
                                 {"letter", std::string(1, r.letter)}};
    } else if (opt.what == "returns") {
        Word u = opt.u.empty() ? Word(1, x.at(0)) : Word(opt.u);
        auto table = return_words(x, u, n);
        json words = json::array();
        for (const auto& w : table.words()) words.push_back(w);
        result["u"] = u;
        result["return_words"] = words;
        json complete = json::array();
        for (const auto& w : table.complete_returns()) complete.push_back(w);
        result["complete_returns"] = complete;
        result["window_truncated"] = table.window_truncated();
    } else if (opt.what == "derive") {
        Word u = opt.u.empty() ? Word(1, x.at(0)) : Word(opt.u);
        DerivedWord d = derived_word(x, u, n);
        std::size_t len = std::min<std::size_t>(opt.n ? opt.n : 200, d.window_length);
        result["u"] = u;
        result["derived_prefix"] = d.word.prefix(len);
        result["derived_window"] = d.window_length;
        json sigma = json::object();
        for (std::size_t i = 1; i <= d.table.size(); ++i)
            sigma[std::string(1, ReturnWordTable::letter_of(i))] = d.table.sigma(i);
        result["sigma"] = sigma;
    } else if (opt.what == "soperator") {
        auto chain = s_iterate(x, n, opt.gap_bound, opt.max_steps);
        json steps = json::array();
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const auto& out = chain[i];
            json step = {{"step", i + 1},
                         {"first_letter", std::string(1, out.first_letter)},
                         {"max_gap", out.max_gap},
                         {"window", out.window_used},
                         {"outcome", out.is_z ? "Z" : "derived"}};
            if (out.gap_witness)
                step["gap_witness"] = {out.gap_witness->first + 1,
                                       out.gap_witness->second + 1};
            if (out.derived) {
                step["derived_prefix"] =
                    out.derived->word.prefix(std::min<std::size_t>(
                        64, out.derived->window_length));
                step["derived_window"] = out.derived->window_length;
            }
            steps.push_back(std::move(step));
        }
        result["gap_bound"] = opt.gap_bound;
        result["steps"] = steps;
        result["note"] = "gap verdicts are window evidence, not proofs";
    } else if (opt.what == "freq") {
        char letter = opt.letter.empty() ? x.at(0) : opt.letter[0];
        auto est = letter_frequency(x, letter, n);
        result["letter"] = std::string(1, letter);
        result["final_ratio"] = est.final_ratio();
        result["liminf_estimate"] = est.liminf_estimate;
        result["limsup_estimate"] = est.limsup_estimate;
        auto cmp = FrequencyComparator::from_word(x, letter);
        result["exact_comparator"] = cmp.has_value();
    } else if (opt.what == "borders") {
        auto unb = unbordered_prefixes(x, n);
        json lens = json::array();
        for (std::size_t i = 0; i < unb.size() && i < 200; ++i)
            lens.push_back(unb[i]);
        result["unbordered_count"] = unb.size();
        result["unbordered_lengths"] = lens;
        auto pals = palindromic_prefixes(x, std::min<std::size_t>(n, 1 << 14));
        json pj = json::array();
        for (std::size_t i = 0; i < pals.size() && i < 200; ++i)
            pj.push_back({{"length", pals[i].first},
                          {"next", std::string(1, pals[i].second)}});
        result["palindromic_prefixes"] = pj;
    } else {
        throw std::invalid_argument(
            "unknown --what (complexity|specials|balance|returns|derive|"
            "soperator|freq|borders)");
    }
    return result;
}

std::string analyze_csv(const Options& opt, const InfiniteWord& x) {
    if (opt.what == "complexity") {
        FactorIndex idx(x, opt.window);
        std::string out = "n,lambda\n";
        std::size_t upto = std::min<std::size_t>(100, idx.n_max());
        for (std::size_t k = 1; k <= upto; ++k)
            out += std::to_string(k) + "," + std::to_string(idx.complexity(k)) + "\n";
        return out;
    }
    if (opt.what == "freq") {
        char letter = opt.letter.empty() ? x.at(0) : opt.letter[0];
        auto est = letter_frequency(x, letter, opt.window);
        std::string out = "n,count\n";
        for (auto& [len, count] : est.samples)
            out += std::to_string(len) + "," + std::to_string(count) + "\n";
        return out;
    }
    throw std::invalid_argument("csv output supports --what complexity|freq");
}

int run_analyze(const Options& opt) {
    check_format(opt, true);
    auto started = std::chrono::steady_clock::now();
    InfiniteWord x = parse_word_spec(opt.word);
    if (opt.format == "csv") {
        emit(opt, analyze_csv(opt, x));
        return 0;
    }
    json result = analyze_payload(opt, x);
    long long ms = 0;
    if (opt.timing)
        ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - started)
                 .count();
    json rep = report::base_report(x.label(), opt.window, "analyze", ms);
    rep["what"] = opt.what;
    rep["result"] = result;
    emit_report(opt, rep, rep.dump(2) + "\n");
    return 0;
}

/// "threshold" alone means "threshold:t=<--t>", and similarly for freq4,
/// pipeline and lift, so the parameter flags compose with bare scheme names.
std::string expand_coloring(const Options& opt, const InfiniteWord& x) {
    const std::string& c = opt.coloring;
    if (c == "threshold") return "threshold:t=" + std::to_string(opt.t);
    if (c == "pipeline") return "pipeline:gap=" + std::to_string(opt.gap_bound);
    if (c == "freq4")
        return "freq4:a=" + std::string(1, opt.letter.empty() ? x.at(0) : opt.letter[0]) +
               ";M=" + std::to_string(opt.big_m);
    if (c == "lift")
        return "lift:u=" + (opt.u.empty() ? std::string(1, x.at(0)) : opt.u) +
               ";inner=prefix2";
    return c;
}

int run_verify(const Options& opt) {
    check_format(opt, true);
    auto started = std::chrono::steady_clock::now();
    InfiniteWord x = parse_word_spec(opt.word);
    ColoringScheme scheme = parse_coloring_spec(expand_coloring(opt, x), x, opt.window);
    std::size_t max_block =
        opt.max_block ? opt.max_block : std::max<std::size_t>(opt.window / 8, 1);
    MonoVerdict verdict = mono_verdict(x, opt.window, scheme, max_block);
    long long ms = 0;
    if (opt.timing)
        ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - started)
                 .count();
    json rep = report::verify_report(x.label(), scheme.label(), opt.window,
                                     max_block, verdict, ms);
    if (opt.format == "csv")
        emit(opt, report::verify_csv(rep));
    else
        emit_report(opt, rep, report::verify_text(rep));
    return verdict.all_saturated ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wordcolor: infinite words, factor colorings, and monochromatic "
        "factorization search"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--word", opt.word, "word spec, e.g. fix:a->ab;b->a@a")
            ->required();
        cmd->add_option("--format", opt.format, "text|json|csv");
        cmd->add_option("--out", opt.out, "write the report to a file");
    };

    CLI::App* gen = app.add_subcommand("gen", "print a prefix of a word");
    add_common(gen);
    gen->add_option("--n", opt.n, "prefix length")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "structural analysis");
    add_common(analyze);
    analyze->add_option("--window", opt.window, "analysis window")->required();
    analyze
        ->add_option("--what", opt.what,
                     "complexity|specials|balance|returns|derive|soperator|"
                     "freq|borders")
        ->required();
    analyze->add_option("--u", opt.u, "prefix for returns/derive");
    analyze->add_option("--n", opt.n, "length parameter (specials/balance/derive)");
    analyze->add_option("--gap-bound", opt.gap_bound, "uniform recurrence gap bound");
    analyze->add_option("--max-steps", opt.max_steps, "S-iteration cap");
    analyze->add_option("--letter", opt.letter, "letter for freq");
    analyze->add_flag("--timing", opt.timing, "include runtime_ms");

    CLI::App* verify = app.add_subcommand(
        "verify", "per-color reachability verdicts for a coloring");
    add_common(verify);
    verify->add_option("--coloring", opt.coloring, "coloring spec, e.g. rich3")
        ->required();
    verify->add_option("--window", opt.window, "window length")->required();
    verify->add_option("--max-block", opt.max_block, "block cap (default window/8)");
    verify->add_option("--gap-bound", opt.gap_bound, "gap bound for a bare 'pipeline'");
    verify->add_option("--t", opt.t, "threshold for a bare 'threshold'");
    verify->add_option("--letter", opt.letter, "letter for a bare 'freq4'");
    verify->add_option("--M", opt.big_m, "block bound for a bare 'freq4'");
    verify->add_option("--u", opt.u, "prefix for a bare 'lift'");
    verify->add_flag("--timing", opt.timing, "include runtime_ms");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(opt);
        if (analyze->parsed()) return run_analyze(opt);
        if (verify->parsed()) return run_verify(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
