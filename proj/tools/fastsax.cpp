#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastsax/fastsax.hpp"

namespace {

using nlohmann::json;

std::vector<std::size_t> parse_level_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (std::string_view tok : fastsax::detail::split_any(text, ", ")) {
        out.push_back(fastsax::detail::parse_size(tok, "levels"));
    }
    if (out.empty()) {
        throw std::runtime_error("levels: empty list");
    }
    return out;
}

fastsax::CostModel load_cost_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cost model: cannot open " + path.string());
    }
    json j = json::parse(in);
    fastsax::CostModel m;
    m.add = j.value("add", 1.0);
    m.mult = j.value("mult", 1.0);
    m.compare = j.value("compare", 1.0);
    m.sqrt = j.value("sqrt", 1.0);
    m.abs = j.value("abs", 1.0);
    m.lookup = j.value("lookup", 1.0);
    m.validate();
    return m;
}

fastsax::TimeSeries resolve_query(const std::string& spec, const fastsax::Dataset& data) {
    if (spec.rfind("row:", 0) == 0) {
        const std::size_t k =
            fastsax::detail::parse_size(std::string_view(spec).substr(4), "query row");
        if (k >= data.size()) {
            throw std::runtime_error("query row " + std::to_string(k) +
                                     " out of range (dataset has " +
                                     std::to_string(data.size()) + " series)");
        }
        return data.series[k];
    }
    const fastsax::Dataset qd = fastsax::load_ucr(spec);
    if (qd.length != data.length) {
        throw std::runtime_error("query series length " + std::to_string(qd.length) +
                                 " does not match dataset length " +
                                 std::to_string(data.length));
    }
    if (qd.size() > 1) {
        std::cerr << "note: " << spec << " has " << qd.size()
                  << " series; using the first\n";
    }
    return fastsax::znormalize(qd.series.front());
}

int cmd_build(const std::string& data_path, const std::string& index_path,
              int alphabet, const std::string& levels_text) {
    const fastsax::Dataset data = fastsax::znormalize(fastsax::load_ucr(data_path));
    const std::vector<std::size_t> levels = levels_text.empty()
                                                ? fastsax::default_levels(data.length)
                                                : parse_level_list(levels_text);
    const fastsax::LevelConfig cfg =
        fastsax::make_level_config(levels, alphabet, data.length);
    const fastsax::MultiLevelIndex idx = fastsax::build_index(data, cfg);
    fastsax::save_index(idx, index_path);

    std::cout << "indexed " << idx.size() << " series of length " << idx.length
              << " (alphabet " << cfg.alphabet_size << ")\n";
    for (std::size_t li = 0; li < cfg.levels(); ++li) {
        double mean_res = 0.0;
        for (const auto& e : idx.entries) mean_res += e[li].residual;
        mean_res /= static_cast<double>(idx.size());
        std::cout << "level " << (li + 1) << ": frames=" << cfg.frame_counts[li]
                  << " frame_len=" << idx.length / cfg.frame_counts[li]
                  << " mean_residual=" << mean_res << "\n";
    }
    std::cout << "wrote " << index_path << "\n";
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& data_path,
              const std::string& query_spec, double epsilon, bool as_json) {
    const fastsax::MultiLevelIndex idx = fastsax::load_index(index_path);
    const fastsax::Dataset data = fastsax::znormalize(fastsax::load_ucr(data_path));
    const fastsax::TimeSeries q = resolve_query(query_spec, data);
    const fastsax::QueryReport rep =
        fastsax::range_query(idx, data, fastsax::RangeQuery{q, epsilon});

    if (as_json) {
        json out;
        out["epsilon"] = epsilon;
        out["answers"] = rep.answers;
        out["candidates"] = rep.candidates;
        json levels = json::array();
        for (std::size_t li = 0; li < rep.levels.size(); ++li) {
            const fastsax::LevelCounters& lc = rep.levels[li];
            levels.push_back({{"frames", idx.config.frame_counts[li]},
                              {"tested", lc.tested},
                              {"excluded_residual", lc.excluded_residual},
                              {"excluded_mindist", lc.excluded_mindist}});
        }
        out["levels"] = levels;
        out["ops"] = {{"adds", rep.ops.adds},       {"mults", rep.ops.mults},
                      {"compares", rep.ops.compares}, {"sqrts", rep.ops.sqrts},
                      {"abss", rep.ops.abss},       {"lookups", rep.ops.lookups}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << "answers (" << rep.answers.size() << "):";
    for (const std::string& id : rep.answers) std::cout << ' ' << id;
    std::cout << "\n";
    for (std::size_t li = 0; li < rep.levels.size(); ++li) {
        const fastsax::LevelCounters& lc = rep.levels[li];
        std::cout << "level " << (li + 1) << " (frames=" << idx.config.frame_counts[li]
                  << "): tested=" << lc.tested
                  << " excluded_residual=" << lc.excluded_residual
                  << " excluded_mindist=" << lc.excluded_mindist << "\n";
    }
    std::cout << "candidates verified: " << rep.candidates << "\n";
    std::cout << "ops: adds=" << rep.ops.adds << " mults=" << rep.ops.mults
              << " compares=" << rep.ops.compares << " sqrts=" << rep.ops.sqrts
              << " abss=" << rep.ops.abss << " lookups=" << rep.ops.lookups << "\n";
    return 0;
}

int cmd_bench(const std::string& data_path, const std::string& alphabet_list,
              const std::string& epsilon_list, const std::string& levels_text,
              std::uint64_t seed, const std::string& out_path,
              const std::string& cost_model_path, std::size_t baseline_level,
              std::size_t series, std::size_t length, std::size_t query_count,
              bool timing) {
    fastsax::SweepConfig cfg;
    cfg.seed = seed;
    cfg.baseline_level = baseline_level;
    cfg.timing = timing;
    if (!cost_model_path.empty()) cfg.model = load_cost_model(cost_model_path);

    cfg.alphabets.clear();
    for (std::string_view tok : fastsax::detail::split_any(alphabet_list, ", ")) {
        cfg.alphabets.push_back(
            static_cast<int>(fastsax::detail::parse_size(tok, "alphabet list")));
    }
    cfg.epsilons.clear();
    for (std::string_view tok : fastsax::detail::split_any(epsilon_list, ", ")) {
        cfg.epsilons.push_back(fastsax::detail::parse_double(tok, "epsilon list"));
    }

    fastsax::Dataset data;
    if (data_path.empty()) {
        data = fastsax::make_random_walks(series, length, seed);
    } else {
        data = fastsax::znormalize(fastsax::load_ucr(data_path));
        cfg.dataset_name = std::filesystem::path(data_path).stem().string();
    }
    if (!levels_text.empty()) cfg.levels = parse_level_list(levels_text);

    const std::vector<fastsax::TimeSeries> queries =
        fastsax::make_blend_queries(query_count, data.length, seed + 1);

    const std::vector<fastsax::BenchResult> results =
        fastsax::run_sweep(data, queries, cfg);
    fastsax::emit_csv(results, std::filesystem::path(out_path));

    for (std::size_t i = 0; i + 1 < results.size(); i += 2) {
        const fastsax::BenchResult& fast = results[i];
        const fastsax::BenchResult& sax = results[i + 1];
        std::cout << "a=" << fast.a << " epsilon=" << fast.epsilon
                  << " weighted fast_sax/sax = " << fast.weighted << "/" << sax.weighted
                  << " = " << (sax.weighted > 0 ? fast.weighted / sax.weighted : 0.0)
                  << "\n";
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& index_path, const std::string& data_path,
               std::size_t trials, std::uint64_t seed) {
    const fastsax::MultiLevelIndex idx = fastsax::load_index(index_path);
    const fastsax::Dataset data = fastsax::znormalize(fastsax::load_ucr(data_path));
    bool ok = true;
    const auto check = [&ok](const std::string& name, bool pass,
                             const std::string& detail = "") {
        std::cout << (pass ? "[ok]   " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        ok = ok && pass;
    };

    check("fingerprint", idx.fingerprint == fastsax::dataset_fingerprint(data));
    if (idx.size() != data.size() || idx.length != data.length) {
        check("shape", false,
              "index " + std::to_string(idx.size()) + "x" + std::to_string(idx.length) +
                  " vs dataset " + std::to_string(data.size()) + "x" +
                  std::to_string(data.length));
        std::cout << "verification FAILED\n";
        return 1;
    }

    const fastsax::BreakpointTable& table =
        fastsax::breakpoint_table(idx.config.alphabet_size);
    std::size_t bad_entries = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t li = 0; li < idx.config.levels(); ++li) {
            const std::size_t frames = idx.config.frame_counts[li];
            const double res =
                fastsax::residual(data.series[i], fastsax::fit_pla(data.series[i], frames));
            const fastsax::SaxWord word =
                fastsax::symbolize(fastsax::paa(data.series[i], frames), table);
            const fastsax::LevelEntry& e = idx.entries[i][li];
            if (std::abs(res - e.residual) > 1e-9 || word != e.word) ++bad_entries;
        }
    }
    check("stored entries match recomputation", bad_entries == 0,
          bad_entries ? std::to_string(bad_entries) + " stale entries" : "");

    std::mt19937_64 rng(seed);
    std::size_t chain_violations = 0, projection_violations = 0;
    for (std::size_t t = 0; t < trials * 10; ++t) {
        const std::size_t i = rng() % data.size();
        const std::size_t j = rng() % data.size();
        for (std::size_t li = 0; li < idx.config.levels(); ++li) {
            const std::size_t frames = idx.config.frame_counts[li];
            const fastsax::PaaVector pi = fastsax::paa(data.series[i], frames);
            const fastsax::PaaVector pj = fastsax::paa(data.series[j], frames);
            const double e = fastsax::euclidean(data.series[i], data.series[j]);
            const double pd = fastsax::paa_dist(pi, pj);
            const double md = fastsax::mindist(idx.entries[i][li].word,
                                               idx.entries[j][li].word, table);
            if (md > pd + 1e-9 || pd > e + 1e-9) ++chain_violations;
            const double own = idx.entries[i][li].residual;
            const double other = fastsax::euclidean(
                std::span<const double>(data.series[i].values),
                fastsax::evaluate(fastsax::fit_pla(data.series[j], frames)));
            if (own > other + 1e-9) ++projection_violations;
        }
    }
    check("lower-bounding chain on sampled pairs", chain_violations == 0);
    check("fit is nearest piecewise linear curve on sampled pairs",
          projection_violations == 0);

    std::size_t query_mismatches = 0;
    const std::vector<fastsax::TimeSeries> queries =
        fastsax::make_blend_queries(trials, data.length, seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t anchor = rng() % data.size();
        const double base = fastsax::euclidean(queries[t], data.series[anchor]);
        const double factor = (t % 3 == 0) ? 0.5 : (t % 3 == 1) ? 1.0 : 1.5;
        const fastsax::RangeQuery rq{queries[t], base * factor};
        const fastsax::QueryReport rep = fastsax::range_query(idx, data, rq);
        if (rep.answers != fastsax::linear_scan(data, rq)) ++query_mismatches;
    }
    check("range queries match the exhaustive scan",
          query_mismatches == 0,
          std::to_string(trials) + " trials");

    std::cout << (ok ? "verification passed\n" : "verification FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact range queries over time series via multi-level symbolic filtering"};
    app.require_subcommand(1);

    std::string data_path, index_path, query_spec, out_path, cost_model_path, levels_text;
    std::string alphabet_list = "3,10,20";
    std::string epsilon_list = "1,2,3,4";
    int alphabet = 8;
    double epsilon = 1.0;
    bool as_json = false, timing = false;
    std::uint64_t seed = 42;
    std::size_t baseline_level = 1, trials = 20;
    std::size_t series = 1000, length = 128, query_count = 10;

    CLI::App* build = app.add_subcommand("build", "build an index over a dataset");
    build->add_option("--data", data_path, "UCR-style dataset file")->required();
    build->add_option("--index", index_path, "output index file")->required();
    build->add_option("--alphabet", alphabet, "alphabet size (3..20)");
    build->add_option("--levels", levels_text,
                      "comma-separated frame counts, most frames first "
                      "(default: divisors of n near n/4,n/8,n/16)");

    CLI::App* query = app.add_subcommand("query", "run one range query");
    query->add_option("--index", index_path, "index file")->required();
    query->add_option("--data", data_path, "dataset the index was built from")->required();
    query->add_option("--query", query_spec,
                      "query series: a UCR-style file, or row:k for dataset row k")
        ->required();
    query->add_option("--epsilon", epsilon, "range radius")->required();
    query->add_flag("--json", as_json, "machine-readable output");

    CLI::App* bench = app.add_subcommand("bench", "sweep methods over alphabets and radii");
    bench->add_option("--data", data_path,
                      "UCR-style dataset (default: seeded synthetic random walks)");
    bench->add_option("--alphabet-list", alphabet_list, "comma-separated alphabet sizes");
    bench->add_option("--epsilon-list", epsilon_list, "comma-separated radii");
    bench->add_option("--levels", levels_text, "comma-separated frame counts");
    bench->add_option("--seed", seed, "RNG seed for data, queries and sampling");
    bench->add_option("--out", out_path, "output CSV path")->required();
    bench->add_option("--cost-model", cost_model_path,
                      "JSON file with per-op weights (add, mult, compare, sqrt, abs, lookup)");
    bench->add_option("--baseline-level", baseline_level,
                      "1-based level the single-level baseline uses");
    bench->add_option("--series", series, "synthetic dataset size");
    bench->add_option("--length", length, "synthetic series length");
    bench->add_option("--queries", query_count, "number of queries per cell");
    bench->add_flag("--timing", timing,
                    "record wall-clock seconds (off keeps the CSV reproducible)");

    CLI::App* verify = app.add_subcommand("verify", "cross-check an index against its dataset");
    verify->add_option("--index", index_path, "index file")->required();
    verify->add_option("--data", data_path, "dataset file")->required();
    verify->add_option("--trials", trials, "sampled query trials");
    verify->add_option("--seed", seed, "RNG seed for sampling");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            return cmd_build(data_path, index_path, alphabet, levels_text);
        }
        if (query->parsed()) {
            return cmd_query(index_path, data_path, query_spec, epsilon, as_json);
        }
        if (bench->parsed()) {
            return cmd_bench(data_path, alphabet_list, epsilon_list, levels_text, seed,
                             out_path, cost_model_path, baseline_level, series, length,
                             query_count, timing);
        }
        if (verify->parsed()) {
            return cmd_verify(index_path, data_path, trials, seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "fastsax: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
