#pragma once

// Machine-readable reports for the CLI. JSON schema (version 1.0):
//   {version, word, window, command, ..., advisories, runtime_ms}
// verify adds {coloring, max_block, palette, per_color:
//   [{color, frontier, verdict, witness}], all_saturated}.
// Positions in reports are 1-based (the human-facing convention); frontier
// values and lengths stay lengths. runtime_ms is 0 unless timing was
// requested, so identical configs produce byte-identical reports.

#include <string>
#include <vector>

#include "json.hpp"
#include "wordcolor/verifier.hpp"

namespace wordcolor::report {

inline constexpr const char* kVersion = "1.0";

using nlohmann::json;

inline json witness_json(const FactorizationWitness& w) {
    json blocks = json::array();
    for (const auto& b : w.blocks)
        blocks.push_back({{"pos", b.start + 1}, {"word", b.word}});
    return {{"covered", w.covered}, {"blocks", blocks}};
}

inline json curve_json(const std::vector<FrontierPoint>& curve) {
    // downsample long curves; keep the final point exactly
    json out = json::array();
    std::size_t step = curve.size() > 256 ? curve.size() / 256 : 1;
    for (std::size_t i = 0; i < curve.size(); i += step)
        out.push_back({{"scanned", curve[i].scanned + 1},
                       {"frontier", curve[i].frontier}});
    if (!curve.empty() && (curve.size() - 1) % step != 0)
        out.push_back({{"scanned", curve.back().scanned + 1},
                       {"frontier", curve.back().frontier}});
    return out;
}

inline json base_report(const std::string& word_label, std::size_t window,
                        const std::string& command, long long runtime_ms) {
    return {{"version", kVersion}, {"word", word_label},   {"window", window},
            {"command", command},  {"advisories", json::array()},
            {"runtime_ms", runtime_ms}};
}

inline json verify_report(const std::string& word_label,
                          const std::string& coloring_label, std::size_t window,
                          std::size_t max_block, const MonoVerdict& verdict,
                          long long runtime_ms) {
    json rep = base_report(word_label, window, "verify", runtime_ms);
    rep["coloring"] = coloring_label;
    rep["max_block"] = max_block;
    json palette = json::array();
    json per_color = json::array();
    for (const auto& r : verdict.per_color) {
        palette.push_back(r.color_name);
        json entry = {{"color", r.color_name},
                      {"frontier", r.frontier},
                      {"verdict", to_string(r.verdict)},
                      {"curve", curve_json(r.curve)}};
        auto w = r.witness(r.frontier);
        entry["witness"] = w ? witness_json(*w) : json(nullptr);
        if (r.partial) rep["advisories"].push_back(
            "color " + r.color_name + ": advisory probes inside the DP");
        per_color.push_back(std::move(entry));
    }
    rep["palette"] = palette;
    rep["per_color"] = per_color;
    rep["all_saturated"] = verdict.all_saturated;
    return rep;
}

inline std::string verify_text(const json& rep) {
    std::string out;
    out += "word:      " + rep["word"].get<std::string>() + "\n";
    out += "coloring:  " + rep["coloring"].get<std::string>() + "\n";
    out += "window:    " + std::to_string(rep["window"].get<std::size_t>()) +
           "   max_block: " +
           std::to_string(rep["max_block"].get<std::size_t>()) + "\n";
    for (const auto& pc : rep["per_color"]) {
        out += "  color " + pc["color"].get<std::string>() + ": " +
               pc["verdict"].get<std::string>() + " (frontier " +
               std::to_string(pc["frontier"].get<std::size_t>()) + ")\n";
    }
    out += rep["all_saturated"].get<bool>()
               ? "verdict: ALL-SATURATED (window evidence, not a proof)\n"
               : "verdict: GROWING for at least one color\n";
    for (const auto& a : rep["advisories"])
        out += "advisory: " + a.get<std::string>() + "\n";
    return out;
}

inline std::string verify_csv(const json& rep) {
    std::string out = "color,scanned,frontier\n";
    for (const auto& pc : rep["per_color"]) {
        const std::string name = pc["color"].get<std::string>();
        for (const auto& pt : pc["curve"])
            out += name + "," + std::to_string(pt["scanned"].get<std::size_t>()) +
                   "," + std::to_string(pt["frontier"].get<std::size_t>()) + "\n";
    }
    return out;
}

}  // namespace wordcolor::report
