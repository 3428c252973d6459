// hierlabel: label the nodes of a document hierarchy with sixteen methods and
// evaluate the labels by retrieval, variance decomposition and coherence.
//
//   hierlabel all --config run.json --threads 4
//   hierlabel stats --config run.json --methods MTWL_raw,RLUM --alpha 0.01
//   hierlabel generate --out demo --docs 500 --terms 800 --depth 5

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "hierlabel/pipeline/pipeline.hpp"
#include "hierlabel/synthetic.hpp"

namespace fs = std::filesystem;
using namespace hierlabel;

namespace {

void write_synthetic(const synthetic::TopicCorpusSpec& spec, const fs::path& dir) {
  const auto c = synthetic::topic_corpus(spec);
  fs::create_directories(dir);
  corpus::save_matrix(c.matrix, (dir / "matrix.txt").string());
  util::write_file((dir / "vocabulary.tsv").string(), corpus::format_vocabulary(c.vocabulary), "cli");
  corpus::save_hierarchy(c.hierarchy, (dir / "hierarchy.json").string());
  std::string ref;
  for (const auto& doc : c.reference) {
    for (std::size_t i = 0; i < doc.size(); ++i) ref += (i ? " " : "") + doc[i];
    ref += "\n";
  }
  util::write_file((dir / "reference.txt").string(), ref, "cli");
  const nlohmann::json cfg = {{"matrix", "matrix.txt"},       {"vocabulary", "vocabulary.tsv"},
                              {"hierarchy", "hierarchy.json"}, {"reference", "reference.txt"},
                              {"output_dir", "out"},           {"p_cap", 10},
                              {"alpha", 0.05}};
  util::write_file((dir / "config.json").string(), cfg.dump(2) + "\n", "cli");
  std::cerr << "generate: " << c.matrix.n_docs() << " docs, " << c.matrix.n_terms() << " terms, "
            << c.hierarchy.size() << " nodes -> " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical cluster labeling benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  pipeline::Overrides over;
  std::size_t threads = 0, p_cap = 0;
  double alpha = 0;
  std::string methods, out_dir;
  bool dry_run = false;

  const char* stages[][2] = {{"validate", "Check config and inputs without writing anything"},
                             {"label", "Select labels with every configured method"},
                             {"evaluate", "Retrieval metrics for specific and generic label queries"},
                             {"stats", "Additive models, SNK groupings and per-level plot data"},
                             {"coherence", "OC-NPMI coherence of every label against the reference corpus"},
                             {"all", "Run label, evaluate, stats and coherence in order"}};
  std::vector<CLI::App*> subs;
  for (auto& s : stages) {
    CLI::App* sub = app.add_subcommand(s[0], s[1]);
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--methods", methods, "Comma-separated method names");
    sub->add_option("--p-cap", p_cap, "Maximum label length P")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", alpha, "Significance level");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--dry-run", dry_run, "Validate and list outputs without writing");
    subs.push_back(sub);
  }

  synthetic::TopicCorpusSpec spec;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("generate", "Write a synthetic corpus with a balanced topic hierarchy");
  gen->add_option("--out", gen_out, "Target directory")->required();
  gen->add_option("--docs", spec.n_docs, "Documents")->check(CLI::PositiveNumber);
  gen->add_option("--terms", spec.n_terms, "Vocabulary size")->check(CLI::PositiveNumber);
  gen->add_option("--depth", spec.depth, "Tree depth (2^(depth+1) - 1 nodes)")->check(CLI::Range(1, 20));
  gen->add_option("--tokens", spec.tokens_per_doc, "Tokens per document")->check(CLI::PositiveNumber);
  gen->add_option("--reference-docs", spec.reference_docs, "Reference corpus documents")->check(CLI::PositiveNumber);
  gen->add_option("--seed", spec.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      write_synthetic(spec, gen_out);
      return 0;
    }
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--threads")) over.threads = threads;
    if (sub->count("--methods")) over.methods = methods;
    if (sub->count("--p-cap")) over.p_cap = p_cap;
    if (sub->count("--alpha")) over.alpha = alpha;
    if (sub->count("--out")) over.output_dir = out_dir;

    auto cfg = pipeline::load_config(config_path);
    over.apply(cfg);
    pipeline::Pipeline p(std::move(cfg), dry_run, std::cerr);
    const std::string name = sub->get_name();
    if (name == "validate") {
      p.validate();
    } else if (name == "label") {
      p.label();
    } else if (name == "evaluate") {
      p.evaluate();
    } else if (name == "stats") {
      p.stats();
    } else if (name == "coherence") {
      p.coherence();
    } else {
      p.all();
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.describe() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(ErrorKind::internal);
  }
}
