#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "guiforge/cdp_session.hpp"
#include "guiforge/evalkit.hpp"
#include "guiforge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace guiforge;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string input;
  std::string out;
  std::string endpoint;
  std::string predictions;
  std::string stages = "synthesize,augment,advanced";
};

void add_common(CLI::App* cmd, Options& o, bool needs_config) {
  auto* c = cmd->add_option("--config", o.config, "pipeline configuration (YAML)");
  if (needs_config) c->required();
  cmd->add_option("--seed", o.seed, "override the configured seed");
  cmd->add_option("--workers", o.workers, "override the worker count");
  cmd->add_option("--input", o.input, "input file or directory")->required();
  cmd->add_option("--out", o.out, "output directory");
}

PipelineConfig config_for(const Options& o, bool validate) {
  PipelineConfig cfg;
  if (!o.config.empty()) cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (validate) cfg.validate();
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void print_report(const StageReport& r) {
  std::cout << r.stage << ": " << r.items << " items, " << r.failures << " failed, " << r.samples
            << " outputs\n";
  for (const std::string& e : r.errors) std::cerr << r.stage << ": " << e << "\n";
}

void print_manifest(const Manifest& m, const std::string& dir) {
  std::cout << "dataset " << dir << ": " << m.records << " records, " << m.images
            << " images, digest " << m.digest << "\n";
}

void emit_json(const nlohmann::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + out);
}

std::vector<Stage> parse_stages(const std::string& list) {
  std::vector<Stage> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "synthesize") {
      out.push_back(Stage::Synthesize);
    } else if (name == "augment") {
      out.push_back(Stage::Augment);
    } else if (name == "advanced") {
      out.push_back(Stage::Advanced);
    } else {
      throw ConfigError("--stages", "unknown stage " + name);
    }
  }
  return out;
}

int run_synthesis(const Options& o, Stage stage) {
  const PipelineConfig cfg = config_for(o, true);
  const Resources res = load_resources(cfg);
  StageReport load;
  load.stage = "load";
  const auto pages = load_annotated_pages(o.input, load);
  if (load.failures) print_report(load);
  StageReport report;
  std::vector<QASample> samples;
  switch (stage) {
    case Stage::Synthesize: samples = synthesize_elementary(pages, res, cfg, report); break;
    case Stage::Augment: samples = synthesize_augmented(pages, res, cfg, report); break;
    case Stage::Advanced: samples = synthesize_advanced(pages, res, cfg, report); break;
  }
  print_report(report);
  print_manifest(write_stage_output(samples, cfg.output_dir, cfg), cfg.output_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Element-level webpage annotation and grounded GUI data synthesis"};
  app.require_subcommand(1);
  Options o;

  auto* capture = app.add_subcommand("capture", "URL list -> snapshots and screenshots");
  add_common(capture, o, true);
  capture->add_option("--endpoint", o.endpoint, "browser WebSocket endpoint (or GUIFORGE_BROWSER_WS)");
  auto* annotate = app.add_subcommand("annotate", "snapshots -> page annotations");
  add_common(annotate, o, false);
  auto* synthesize = app.add_subcommand("synthesize", "annotations -> elementary dataset");
  add_common(synthesize, o, true);
  auto* augment = app.add_subcommand("augment", "annotations -> augmented and icon dataset");
  add_common(augment, o, true);
  auto* advanced = app.add_subcommand("advanced", "annotations -> model-assisted dataset");
  add_common(advanced, o, true);
  auto* run = app.add_subcommand("run", "snapshots -> annotations and one combined dataset");
  add_common(run, o, true);
  run->add_option("--stages", o.stages, "comma-separated synthesis stages");
  auto* stats = app.add_subcommand("stats", "dataset -> statistics report");
  stats->add_option("--input", o.input, "dataset directory")->required();
  stats->add_option("--out", o.out, "report file (default stdout)");
  auto* eval = app.add_subcommand("eval", "click accuracy of grounding predictions");
  eval->add_option("--input", o.input, "cases (JSONL)")->required();
  eval->add_option("--predictions", o.predictions, "predictions (JSONL)")->required();
  eval->add_option("--out", o.out, "report file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (capture->parsed()) {
      const PipelineConfig cfg = config_for(o, true);
      std::string endpoint = o.endpoint;
      if (endpoint.empty()) {
        const char* env = std::getenv("GUIFORGE_BROWSER_WS");
        endpoint = env ? env : cfg.capture.protocol_endpoint;
      }
      if (endpoint.empty()) throw ConfigError("capture.endpoint", "no browser endpoint given");
      const auto targets = parse_url_list(read_file(o.input));
      const auto timeout = cfg.capture.command_timeout;
      SessionFactory factory = [endpoint, timeout]() -> std::unique_ptr<BrowserSession> {
        return CdpSession::connect(endpoint, timeout);
      };
      print_report(run_capture(targets, factory, cfg, cfg.output_dir));
    } else if (annotate->parsed()) {
      const PipelineConfig cfg = config_for(o, false);
      if (o.out.empty()) throw ConfigError("--out", "required");
      StageReport report;
      run_annotate(o.input, o.out, cfg, report);
      print_report(report);
    } else if (synthesize->parsed()) {
      return run_synthesis(o, Stage::Synthesize);
    } else if (augment->parsed()) {
      return run_synthesis(o, Stage::Augment);
    } else if (advanced->parsed()) {
      return run_synthesis(o, Stage::Advanced);
    } else if (run->parsed()) {
      const PipelineConfig cfg = config_for(o, true);
      const Resources res = load_resources(cfg);
      std::vector<StageReport> reports;
      const Manifest m =
          run_pipeline(o.input, cfg.output_dir, cfg, parse_stages(o.stages), res, reports);
      for (const auto& r : reports) print_report(r);
      print_manifest(m, (fs::path(cfg.output_dir) / "dataset").string());
    } else if (stats->parsed()) {
      emit_json(compute_stats(o.input).to_json(), o.out);
    } else if (eval->parsed()) {
      emit_json(evaluate(load_cases(o.input), load_predictions(o.predictions)).to_json(), o.out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
