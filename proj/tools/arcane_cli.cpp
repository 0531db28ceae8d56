/* arcane_cli.cpp -- reduce / generate / check driver
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcane/common.hpp"
#include "arcane/pipeline.hpp"

using namespace arcane;

int main(int argc, char** argv) {
    CLI::App app{"assertion set reduction via semantic clustering and MCTS rule search"};
    app.require_subcommand(1);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "cluster and reduce a corpus");
    std::string corpus_path, out_dir;
    PipelineConfig cfg;
    std::string report_format = "json";
    const char* env_url = std::getenv("ARCANE_EMBED_URL");
    if (env_url && *env_url) cfg.embedder = env_url;
    reduce->add_option("--corpus", corpus_path, "corpus JSON file")->required();
    reduce->add_option("--out", out_dir, "output directory")->required();
    reduce->add_option("--alpha", cfg.alpha, "linguistic similarity weight");
    reduce->add_option("--beta", cfg.beta, "lasso similarity weight");
    reduce->add_option("--threshold", cfg.threshold, "unified similarity threshold");
    reduce->add_option("--lasso-samples", cfg.lasso_samples, "lassos per shared pool");
    reduce->add_option("--seed", cfg.seed, "global seed");
    reduce->add_option("--workers", cfg.workers, "worker pool size");
    reduce->add_option("--mcts-iters", cfg.mcts_iterations, "search iteration cap");
    reduce->add_option("--patience", cfg.patience, "early-stop patience");
    reduce->add_option("--embedder", cfg.embedder, "hash or embedding-service base URL");
    reduce->add_option("--report", report_format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    bool no_coarse = false;
    reduce->add_flag("--no-coarse-partition", no_coarse, "disable the coarse semantic partition");

    // generate
    auto* generate = app.add_subcommand("generate", "emit a synthetic-redundancy corpus");
    int gen_n = 10, gen_r = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    generate->add_option("--n", gen_n, "base assertion count")->required();
    generate->add_option("--r", gen_r, "planted redundancies per base")->required();
    generate->add_option("--seed", gen_seed, "generator seed")->required();
    generate->add_option("--out", gen_out, "output corpus path")->required();

    // check
    auto* check = app.add_subcommand("check", "oracle equivalence of two corpora");
    std::vector<std::string> check_paths;
    int check_samples = 500;
    std::uint64_t check_seed = 1;
    check->add_option("--corpus", check_paths, "corpus JSON file (give twice)")
        ->expected(2)
        ->required();
    check->add_option("--lasso-samples", check_samples, "shared lassos to sample");
    check->add_option("--seed", check_seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*reduce) {
            cfg.coarse_partition = !no_coarse;
            Corpus corpus = load_corpus(corpus_path);
            PipelineResult result = run_pipeline(corpus, cfg);

            std::filesystem::create_directories(out_dir);
            save_corpus(result.reduced, out_dir + "/reduced.json");
            emit_report(result.report, report_format,
                        out_dir + "/report." + (report_format == "text" ? "txt" : "json"));
            std::cout << report_to_text(result.report);

            if (!result.report.end_to_end_certified || result.report.certificate_incidents > 0) {
                std::cerr << "internal soundness incident: see report\n";
                return 3;
            }
            return 0;
        }
        if (*generate) {
            if (gen_n < 1 || gen_r < 0) {
                std::cerr << "generate: need --n >= 1 and --r >= 0\n";
                return 2;
            }
            SyntheticCorpus synth = generate_synthetic(gen_n, gen_r, gen_seed);
            save_corpus(synth.corpus, gen_out);
            std::cout << "wrote " << synth.corpus.entries.size() << " assertions ("
                      << synth.ground_truth.size() << " planted) to " << gen_out << "\n";
            return 0;
        }
        if (*check) {
            Corpus a = load_corpus(check_paths[0]);
            Corpus b = load_corpus(check_paths[1]);
            Certificate cert = check_corpora(a, b, check_samples, check_seed);
            if (cert.ok) {
                std::cout << "equivalent on " << cert.samples << " shared lassos\n";
                return 0;
            }
            std::cout << "NOT equivalent: " << cert.failures << "/" << cert.samples
                      << " disagreements, first at " << cert.counterexample << "\n";
            return 1;
        }
    } catch (const CorpusError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
