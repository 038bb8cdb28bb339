// wos: ingest, mine, rank, serve, export and synthesize scholar knowledge graphs.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "wos/api.hpp"
#include "wos/classifier.hpp"
#include "wos/corpus.hpp"
#include "wos/error.hpp"
#include "wos/graph.hpp"
#include "wos/miner.hpp"
#include "wos/nodelink.hpp"
#include "wos/ranking.hpp"
#include "wos/synth.hpp"

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wos::Error("cannot open '" + path + "'");
  return in;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void report(const std::vector<wos::Diagnostic>& diags, const std::string& source) {
  for (const auto& d : diags) {
    if (d.line)
      spdlog::warn("{}:{}: {}", source, d.line, d.message);
    else
      spdlog::warn("{}: {}", source, d.message);
  }
}

struct IngestArgs {
  std::string corpus, field, geo, snapshot;
};

int run_ingest(const IngestArgs& a) {
  auto in = open_input(a.corpus);
  wos::ParseResult parsed = wos::parse_corpus(in);
  report(parsed.diagnostics, a.corpus);
  auto records = a.field.empty() ? std::move(parsed.records) : wos::filter_by_field(parsed.records, a.field);

  wos::GraphStore graph;
  report(graph.ingest(records), a.corpus);
  report(wos::build_scholars(records).warnings, a.corpus);
  if (!a.geo.empty()) {
    auto geo_in = open_input(a.geo);
    std::vector<wos::Diagnostic> diags;
    graph.set_geo_table(wos::parse_geo_table(geo_in, &diags));
    report(diags, a.geo);
  }
  wos::save_snapshot(graph, a.snapshot);
  spdlog::info("ingested {} publications, {} scholars, {} dangling refs ({} malformed lines) -> {}",
               graph.publications().size(), graph.scholars().size(), graph.dangling_refs().size(),
               parsed.diagnostics.size(), a.snapshot);
  return 0;
}

struct MineArgs {
  std::string snapshot, out, kinds = "coauthor,advisor,cites,cocited,team", weights, fit_pairs;
  double tau = 0.5;
  double team_threshold = 3.0;
  wos::LogisticFitOptions fit;
};

std::vector<wos::LabeledFeatures> labeled_features(const wos::GraphStore& graph,
                                                   const std::vector<wos::LabeledPair>& pairs) {
  std::vector<wos::LabeledFeatures> out;
  for (const auto& p : pairs) {
    if (!graph.find_scholar(p.advisor) || !graph.find_scholar(p.advisee)) {
      spdlog::warn("labeled pair {} -> {} references an unknown scholar; skipped", p.advisor, p.advisee);
      continue;
    }
    auto c = wos::evaluate_candidate(graph, p.advisor, p.advisee, wos::AdvisorModel{});
    if (!c) {
      spdlog::debug("labeled pair {} -> {} never co-authored; skipped", p.advisor, p.advisee);
      continue;
    }
    out.push_back({c->features, p.label});
  }
  return out;
}

wos::AdvisorModel fit_from_file(const wos::GraphStore& graph, const std::string& path,
                                const wos::LogisticFitOptions& options) {
  auto in = open_input(path);
  std::vector<wos::Diagnostic> diags;
  auto pairs = wos::parse_labeled_pairs(in, &diags);
  report(diags, path);
  return wos::fit_advisor_weights(labeled_features(graph, pairs), options);
}

int run_mine(const MineArgs& a) {
  wos::GraphStore graph = wos::load_snapshot(a.snapshot);
  wos::MineOptions opt;
  opt.kinds.clear();
  for (const auto& k : split_csv(a.kinds)) {
    auto kind = wos::parse_edge_kind(k);
    if (!kind) throw wos::InvalidArgumentError("unknown edge kind '" + k + "'");
    opt.kinds.insert(*kind);
  }
  opt.tau = a.tau;
  opt.team_threshold = a.team_threshold;
  if (!a.weights.empty()) {
    auto parts = split_csv(a.weights);
    if (parts.size() != 5) throw wos::InvalidArgumentError("--weights expects w1,w2,w3,w4,bias");
    for (int i = 0; i < 4; ++i) opt.model.weights(i) = std::stod(parts[static_cast<std::size_t>(i)]);
    opt.model.bias = std::stod(parts[4]);
  }
  if (!a.fit_pairs.empty()) {
    opt.model = fit_from_file(graph, a.fit_pairs, a.fit);
    spdlog::info("fitted weights ({}, {}, {}, {}) bias {}", opt.model.weights(0), opt.model.weights(1),
                 opt.model.weights(2), opt.model.weights(3), opt.model.bias);
  }

  const wos::MineReport rep = wos::mine_all(graph, opt);
  for (const auto& [kind, n] : rep.edge_counts) spdlog::info("{}: {} edges", wos::to_string(kind), n);
  for (const auto& cycle : rep.advisor_cycles) {
    std::string text;
    for (const auto& id : cycle) text += id + " -> ";
    spdlog::warn("advisor cycle: {}{}", text, cycle.front());
  }
  const std::string out = a.out.empty() ? a.snapshot : a.out;
  wos::save_snapshot(graph, out);
  spdlog::info("wrote {}", out);
  return 0;
}

struct RankArgs {
  std::string snapshot, measure;
  std::size_t offset = 0;
  std::size_t limit = 20;
};

int run_rank(const RankArgs& a) {
  auto m = wos::parse_measure(a.measure);
  if (!m) throw wos::InvalidArgumentError("unknown measure '" + a.measure + "'");
  const wos::GraphStore graph = wos::load_snapshot(a.snapshot);
  const wos::RankingList list = wos::ranked_list(*m, graph);
  std::size_t rank = a.offset;
  for (const auto& e : wos::page(list, a.offset, a.limit))
    std::printf("%zu\t%s\t%s\t%.17g\n", ++rank, e.scholar_id.c_str(),
                graph.scholars().at(e.scholar_id).name.c_str(), e.value);
  return 0;
}

struct ServeArgs {
  std::string snapshot, host = "127.0.0.1", ui_dir;
  int port = 8080;
};

int run_serve(const ServeArgs& a) {
  wos::ApiService service(wos::load_snapshot(a.snapshot));
  std::optional<std::filesystem::path> ui;
  if (!a.ui_dir.empty()) ui = a.ui_dir;
  wos::HttpServer server(service, ui);
  const int port = server.bind(a.host, a.port);

  // Signals are blocked in every thread; one thread waits for them and stops the server.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    spdlog::info("signal {} received, shutting down", sig);
    server.stop();
  });

  spdlog::info("serving {} on http://{}:{}", a.snapshot, a.host, port);
  std::printf("listening on %s:%d\n", a.host.c_str(), port);
  std::fflush(stdout);
  server.listen();
  // listen() can also return on its own (e.g. socket error); release the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int run_export(const std::string& snapshot, const std::string& format, const std::string& out) {
  if (format != "nodelink") throw wos::InvalidArgumentError("unsupported format '" + format + "'");
  const wos::GraphStore graph = wos::load_snapshot(snapshot);
  if (out.empty() || out == "-") {
    wos::export_nodelink(graph, std::cout);
    return 0;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw wos::Error("cannot write '" + out + "'");
  wos::export_nodelink(graph, f);
  return 0;
}

int run_import(const std::string& input, const std::string& snapshot) {
  auto in = open_input(input);
  wos::save_snapshot(wos::import_nodelink(in), snapshot);
  spdlog::info("imported {} -> {}", input, snapshot);
  return 0;
}

int run_fit(const std::string& snapshot, const std::string& pairs, const wos::LogisticFitOptions& opt) {
  const wos::GraphStore graph = wos::load_snapshot(snapshot);
  const wos::AdvisorModel model = fit_from_file(graph, pairs, opt);
  std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", model.weights(0), model.weights(1), model.weights(2),
              model.weights(3), model.bias);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scholar knowledge graph engine"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Parse a line-record corpus into a snapshot");
  c_ingest->add_option("--corpus", ingest.corpus, "Line-delimited publication records")->required();
  c_ingest->add_option("--field", ingest.field, "Keep only records tagged with this field");
  c_ingest->add_option("--geo", ingest.geo, "institution<TAB>lat<TAB>lng table");
  c_ingest->add_option("--snapshot", ingest.snapshot, "Output snapshot")->required();

  MineArgs mine;
  auto* c_mine = app.add_subcommand("mine", "Derive relationship edges into a snapshot");
  c_mine->add_option("--snapshot", mine.snapshot, "Input snapshot")->required();
  c_mine->add_option("--out", mine.out, "Output snapshot (default: overwrite input)");
  c_mine->add_option("--kinds", mine.kinds, "Comma list of coauthor,advisor,cites,cocited,team");
  c_mine->add_option("--tau", mine.tau, "Advisor score threshold in (0,1)");
  c_mine->add_option("--team-threshold", mine.team_threshold, "Min joint papers for a team coauthor");
  c_mine->add_option("--weights", mine.weights, "Advisor model w1,w2,w3,w4,bias");
  c_mine->add_option("--fit", mine.fit_pairs, "Fit advisor weights on a labeled pairs file first");
  c_mine->add_option("--fit-iterations", mine.fit.iterations, "Gradient descent iterations");
  c_mine->add_option("--fit-rate", mine.fit.learning_rate, "Gradient descent learning rate");
  c_mine->add_option("--fit-seed", mine.fit.seed, "Shuffle seed for mini-batches");
  c_mine->add_option("--fit-batch", mine.fit.batch_size, "Mini-batch size (0 = full batch)");

  RankArgs rank;
  auto* c_rank = app.add_subcommand("rank", "Print a descending ranking list");
  c_rank->add_option("--snapshot", rank.snapshot, "Snapshot")->required();
  c_rank->add_option("--measure", rank.measure,
                     "collaborators|advisees|team_members|advisor_influence|citations|potential_index")
      ->required();
  c_rank->add_option("--offset", rank.offset, "Skip this many entries");
  c_rank->add_option("--limit", rank.limit, "Entries to print");

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Serve the JSON API");
  c_serve->add_option("--snapshot", serve.snapshot, "Snapshot")->required();
  auto* port_opt = c_serve->add_option("--port", serve.port, "TCP port (0 = any free port; env WOS_PORT)");
  c_serve->add_option("--host", serve.host, "Bind address");
  c_serve->add_option("--ui-dir", serve.ui_dir, "Static web UI assets served under /ui/");

  std::string export_snapshot, export_format = "nodelink", export_out;
  auto* c_export = app.add_subcommand("export", "Dump the graph in node-link format");
  c_export->add_option("--snapshot", export_snapshot, "Snapshot")->required();
  c_export->add_option("--format", export_format, "nodelink");
  c_export->add_option("--out", export_out, "Output file (default stdout)");

  std::string import_input, import_snapshot;
  auto* c_import = app.add_subcommand("import", "Rebuild a snapshot from a node-link export");
  c_import->add_option("--input", import_input, "Node-link file")->required();
  c_import->add_option("--snapshot", import_snapshot, "Output snapshot")->required();

  wos::SynthConfig synth;
  std::string synth_out = "synth";
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted advisors");
  c_synth->add_option("--scholars", synth.scholars, "Scholar count");
  c_synth->add_option("--pubs", synth.pubs, "Publication count");
  c_synth->add_option("--seed", synth.seed, "Random seed");
  c_synth->add_option("--advisee-fraction", synth.advisee_fraction, "Share of scholars with a planted advisor");
  c_synth->add_option("--distractor-rate", synth.distractor_rate, "Distractor coauthor probability");
  c_synth->add_option("--out", synth_out, "Output directory (corpus.jsonl, manifest.tsv, geo.tsv)");

  std::string fit_snapshot, fit_pairs;
  wos::LogisticFitOptions fit_opt;
  auto* c_fit = app.add_subcommand("fit", "Fit advisor weights on labeled pairs and print them");
  c_fit->add_option("--snapshot", fit_snapshot, "Snapshot with COAUTHOR edges")->required();
  c_fit->add_option("--pairs", fit_pairs, "advisor<TAB>advisee<TAB>label file")->required();
  c_fit->add_option("--iterations", fit_opt.iterations, "Gradient descent iterations");
  c_fit->add_option("--rate", fit_opt.learning_rate, "Learning rate");
  c_fit->add_option("--seed", fit_opt.seed, "Shuffle seed");
  c_fit->add_option("--batch", fit_opt.batch_size, "Mini-batch size (0 = full batch)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  spdlog::set_default_logger(spdlog::stderr_color_mt("wos"));
  spdlog::set_level(spdlog::level::from_str(log_level));
  const bool port_given = port_opt->count() > 0;

  try {
    if (*c_ingest) return run_ingest(ingest);
    if (*c_mine) return run_mine(mine);
    if (*c_rank) return run_rank(rank);
    if (*c_serve) {
      if (!port_given) {
        if (const char* env = std::getenv("WOS_PORT")) serve.port = std::stoi(env);
      }
      return run_serve(serve);
    }
    if (*c_export) return run_export(export_snapshot, export_format, export_out);
    if (*c_import) return run_import(import_input, import_snapshot);
    if (*c_synth) {
      const wos::SynthCorpus corpus = wos::synthesize(synth);
      wos::write_synth(corpus, synth_out);
      spdlog::info("wrote {} publications, {} scholars, {} planted advisor pairs to {}",
                   corpus.records.size(), corpus.scholar_count, corpus.planted.size(), synth_out);
      return 0;
    }
    if (*c_fit) return run_fit(fit_snapshot, fit_pairs, fit_opt);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 2;
}
