#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "guiforge/advanced.hpp"
#include "guiforge/annotator.hpp"
#include "guiforge/capture.hpp"
#include "guiforge/config.hpp"
#include "guiforge/dataset.hpp"
#include "guiforge/icon_bank.hpp"
#include "guiforge/qa_sample.hpp"
#include "guiforge/templates.hpp"

namespace guiforge {

// Per-item failures of one stage. Item failures are not fatal.
struct StageReport {
  std::string stage;
  std::size_t items = 0;
  std::size_t failures = 0;
  std::size_t samples = 0;
  std::vector<std::string> errors;

  nlohmann::json to_json() const;
};

// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions are
// collected per index; slot i of the result is empty on success.
std::vector<std::string> parallel_for(std::size_t n, int workers,
                                      const std::function<void(std::size_t)>& fn);

// A snapshot directory holds <stem>.snapshot.json and <stem>.png per capture,
// plus an optional index.json {stem: {url, source, capture_index}}.
inline constexpr const char* kSnapshotSuffix = ".snapshot.json";
inline constexpr const char* kAnnotationSuffix = ".annotation.json";
inline constexpr const char* kIndexFile = "index.json";

struct PageInput {
  std::string stem;
  std::string snapshot_path;
  std::string screenshot_path;
  std::string source = "fixture";
  int capture_index = 0;
};

// Sorted by stem.
std::vector<PageInput> list_snapshot_dir(const std::string& directory);

std::string page_stem(const std::string& url, int capture_index);

StageReport run_capture(const std::vector<CaptureTarget>& targets, const SessionFactory& factory,
                        const PipelineConfig& config, const std::string& out_dir);

struct AnnotatedPage {
  std::string stem;
  PageAnnotation page;
  ImageRef screenshot;
};

// Annotates every snapshot; writes <stem>.annotation.json and copies the
// screenshot when out_dir is non-empty.
std::vector<AnnotatedPage> run_annotate(const std::string& in_dir, const std::string& out_dir,
                                        const PipelineConfig& config, StageReport& report);

// Reads an annotate output directory, sorted by stem.
std::vector<AnnotatedPage> load_annotated_pages(const std::string& directory, StageReport& report);

struct Resources {
  TemplateBank templates;
  IconBank icons;
  PromptSet prompts;
  std::shared_ptr<GenerationClient> client;
};

// Loads everything the synthesis stages reference from the config.
Resources load_resources(const PipelineConfig& config);

std::vector<QASample> synthesize_elementary(const std::vector<AnnotatedPage>& pages,
                                            const Resources& res, const PipelineConfig& config,
                                            StageReport& report);
std::vector<QASample> synthesize_augmented(const std::vector<AnnotatedPage>& pages,
                                           const Resources& res, const PipelineConfig& config,
                                           StageReport& report);
std::vector<QASample> synthesize_advanced(const std::vector<AnnotatedPage>& pages,
                                          const Resources& res, const PipelineConfig& config,
                                          StageReport& report);

enum class Stage { Synthesize, Augment, Advanced };

// Deduplicates and writes one dataset.
Manifest write_stage_output(const std::vector<QASample>& samples, const std::string& out_dir,
                            const PipelineConfig& config);

// annotate, then the chosen synthesis stages in order, then one dataset
// under <out_dir>/dataset (annotations under <out_dir>/annotations).
Manifest run_pipeline(const std::string& snapshot_dir, const std::string& out_dir,
                      const PipelineConfig& config, const std::vector<Stage>& stages,
                      const Resources& res, std::vector<StageReport>& reports);

}  // namespace guiforge
