#include "guiforge/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "guiforge/augment.hpp"
#include "guiforge/digest.hpp"
#include "guiforge/elementary.hpp"
#include "guiforge/marks.hpp"

namespace guiforge {

namespace fs = std::filesystem;
using nlohmann::json;

json StageReport::to_json() const {
  return {{"stage", stage},
          {"items", items},
          {"failures", failures},
          {"samples", samples},
          {"errors", errors}};
}

std::vector<std::string> parallel_for(std::size_t n, int workers,
                                      const std::function<void(std::size_t)>& fn) {
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (count <= 1) {
    run();
    return errors;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  return errors;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void collect(StageReport& report, const std::vector<std::string>& errors,
             const std::vector<std::string>& names) {
  report.items += errors.size();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i].empty()) continue;
    ++report.failures;
    report.errors.push_back(names[i] + ": " + errors[i]);
  }
}

std::vector<std::string> stems(const std::vector<AnnotatedPage>& pages) {
  std::vector<std::string> out;
  for (const auto& p : pages) out.push_back(p.stem);
  return out;
}

std::vector<QASample> flatten(std::vector<std::vector<QASample>>& parts) {
  std::vector<QASample> out;
  for (auto& part : parts) {
    for (auto& s : part) out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t page_seed(const PipelineConfig& config, const PageAnnotation& page,
                        const std::string& stage) {
  return derive_seed(config.seed, page.url, static_cast<std::uint64_t>(page.capture_index), stage);
}

}  // namespace

std::vector<PageInput> list_snapshot_dir(const std::string& directory) {
  if (!fs::is_directory(directory)) throw std::runtime_error("not a directory: " + directory);
  json index = json::object();
  const fs::path index_path = fs::path(directory) / kIndexFile;
  if (fs::exists(index_path)) index = json::parse(read_file(index_path));

  std::vector<PageInput> out;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file() || !ends_with(name, kSnapshotSuffix)) continue;
    PageInput in;
    in.stem = name.substr(0, name.size() - std::string_view(kSnapshotSuffix).size());
    in.snapshot_path = entry.path().string();
    in.screenshot_path = (fs::path(directory) / (in.stem + ".png")).string();
    if (index.contains(in.stem)) {
      const json& meta = index[in.stem];
      in.source = meta.value("source", in.source);
      in.capture_index = meta.value("capture_index", 0);
    }
    out.push_back(std::move(in));
  }
  std::sort(out.begin(), out.end(),
            [](const PageInput& a, const PageInput& b) { return a.stem < b.stem; });
  return out;
}

std::string page_stem(const std::string& url, int capture_index) {
  return sha256_hex(url).substr(0, 16) + "_" + std::to_string(capture_index);
}

StageReport run_capture(const std::vector<CaptureTarget>& targets, const SessionFactory& factory,
                        const PipelineConfig& config, const std::string& out_dir) {
  CaptureConfig cc = config.capture;
  if (cc.extractor_script.empty()) {
    if (config.extractor_path.empty()) {
      throw ConfigError("capture.extractor_path", "required for capture");
    }
    cc.extractor_script = read_file(config.extractor_path);
  }
  fs::create_directories(out_dir);
  const std::vector<CaptureOutcome> outcomes = capture_all(targets, factory, cc, config.seed);

  StageReport report;
  report.stage = "capture";
  json index = json::object();
  const fs::path index_path = fs::path(out_dir) / kIndexFile;
  if (fs::exists(index_path)) index = json::parse(read_file(index_path));
  for (const CaptureOutcome& o : outcomes) {
    ++report.items;
    if (!o.error.empty()) {
      ++report.failures;
      report.errors.push_back(o.error);
      continue;
    }
    for (const CapturedPage& p : o.pages) {
      const std::string stem = page_stem(o.target.url, p.capture_index);
      write_file(fs::path(out_dir) / (stem + kSnapshotSuffix), serialize_snapshot(p.snapshot));
      write_file(fs::path(out_dir) / (stem + ".png"), p.screenshot_png);
      index[stem] = {{"url", o.target.url},
                     {"source", o.target.source},
                     {"capture_index", p.capture_index},
                     {"page_height", p.page_height}};
      ++report.samples;
    }
  }
  write_file(index_path, index.dump(2) + "\n");
  return report;
}

std::vector<AnnotatedPage> run_annotate(const std::string& in_dir, const std::string& out_dir,
                                        const PipelineConfig& config, StageReport& report) {
  report.stage = "annotate";
  const std::vector<PageInput> inputs = list_snapshot_dir(in_dir);
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::vector<std::optional<AnnotatedPage>> results(inputs.size());
  std::vector<std::string> names;
  for (const auto& in : inputs) names.push_back(in.stem);
  const auto errors = parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
    const PageInput& in = inputs[i];
    const PageSnapshot snapshot = load_snapshot_file(in.snapshot_path);
    ImageRef image = make_image_ref(read_file(in.screenshot_path));
    if (image.width != snapshot.viewport().width || image.height != snapshot.viewport().height) {
      throw std::runtime_error("screenshot is " + std::to_string(image.width) + "x" +
                               std::to_string(image.height) + ", viewport is " +
                               std::to_string(snapshot.viewport().width) + "x" +
                               std::to_string(snapshot.viewport().height));
    }
    AnnotatedPage out{in.stem, annotate_page(snapshot), std::move(image)};
    out.page.snapshot_ref = in.stem + kSnapshotSuffix;
    out.page.screenshot_ref = in.stem + ".png";
    out.page.source = in.source;
    out.page.capture_index = in.capture_index;
    if (!out_dir.empty()) {
      write_file(fs::path(out_dir) / (in.stem + kAnnotationSuffix), serialize_annotation(out.page));
      write_file(fs::path(out_dir) / out.page.screenshot_ref, *out.screenshot.png);
    }
    results[i] = std::move(out);
  });
  collect(report, errors, names);
  std::vector<AnnotatedPage> pages;
  for (auto& r : results) {
    if (r) pages.push_back(std::move(*r));
  }
  report.samples = pages.size();
  return pages;
}

std::vector<AnnotatedPage> load_annotated_pages(const std::string& directory, StageReport& report) {
  if (!fs::is_directory(directory)) throw std::runtime_error("not a directory: " + directory);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && ends_with(name, kAnnotationSuffix)) files.push_back(name);
  }
  std::sort(files.begin(), files.end());
  std::vector<AnnotatedPage> pages;
  for (const std::string& name : files) {
    try {
      AnnotatedPage p;
      p.stem = name.substr(0, name.size() - std::string_view(kAnnotationSuffix).size());
      p.page = parse_annotation(read_file(fs::path(directory) / name));
      p.screenshot = make_image_ref(read_file(fs::path(directory) / p.page.screenshot_ref));
      pages.push_back(std::move(p));
    } catch (const std::exception& e) {
      ++report.failures;
      report.errors.push_back(name + ": " + e.what());
    }
  }
  return pages;
}

Resources load_resources(const PipelineConfig& config) {
  Resources res{load_templates(config.synthesis.template_path),
                load_icon_bank(config.augment.icon_bank_path),
                load_prompts(config.advanced.prompt_dir),
                nullptr};
  if (config.advanced.client == "http") {
    const char* key = std::getenv(kGenApiKeyEnv);
    res.client = std::make_shared<HttpClient>(config.advanced.endpoint, key ? key : "");
  } else {
    res.client = std::make_shared<StubClient>(StubClient::from_directory(config.advanced.stub_dir));
  }
  return res;
}

namespace {

json stage_meta(const AnnotatedPage& p, const PipelineConfig& config, const char* stage) {
  json meta = page_meta(p.page, config.seed);
  meta["stage"] = stage;
  return meta;
}

void element_samples(std::vector<QASample>& out, const PageAnnotation& page, const ImageRef& image,
                     std::initializer_list<TaskKind> tasks, const Resources& res,
                     const PipelineConfig& config, std::uint64_t seed, const json& meta) {
  for (TaskKind task : tasks) {
    if (eligible_elements(page, task).empty()) continue;
    Rng rng(derive_seed(seed, to_string(task)));
    out.push_back(
        make_element_sample(page, image, task, res.templates, rng, config.synthesis.turns, meta));
  }
}

}  // namespace

std::vector<QASample> synthesize_elementary(const std::vector<AnnotatedPage>& pages,
                                            const Resources& res, const PipelineConfig& config,
                                            StageReport& report) {
  report.stage = "synthesize";
  std::vector<std::vector<QASample>> parts(pages.size());
  const auto errors = parallel_for(pages.size(), config.workers, [&](std::size_t i) {
    const AnnotatedPage& p = pages[i];
    const std::uint64_t seed = page_seed(config, p.page, "synthesize");
    const json meta = stage_meta(p, config, "synthesize");
    element_samples(parts[i], p.page, p.screenshot,
                    {TaskKind::Grounding, TaskKind::Referring, TaskKind::OCR}, res, config, seed,
                    meta);
    for (TaskKind task : {TaskKind::PageTitle, TaskKind::PageDescription}) {
      Rng rng(derive_seed(seed, to_string(task)));
      if (auto s = make_page_sample(p.page, p.screenshot, task, res.templates, rng, meta)) {
        parts[i].push_back(std::move(*s));
      }
    }
  });
  collect(report, errors, stems(pages));
  std::vector<QASample> out = flatten(parts);
  report.samples = out.size();
  return out;
}

std::vector<QASample> synthesize_augmented(const std::vector<AnnotatedPage>& pages,
                                           const Resources& res, const PipelineConfig& config,
                                           StageReport& report) {
  report.stage = "augment";
  const AugmentConfig& ac = config.augment;
  std::vector<std::vector<QASample>> parts(pages.size());
  const auto errors = parallel_for(pages.size(), config.workers, [&](std::size_t i) {
    const AnnotatedPage& p = pages[i];
    const std::uint64_t seed = page_seed(config, p.page, "augment");
    Rng pick(derive_seed(seed, "select"));
    if (!pick.bernoulli(ac.augment_fraction) || p.page.elements.empty()) return;
    const Image screenshot = decode_png(*p.screenshot.png);

    Rng crop_rng(derive_seed(seed, "crop"));
    CropResult cropped = random_crop(p.page, screenshot, crop_rng, ac.crop);
    json crop_meta = stage_meta(p, config, "augment");
    crop_meta["augment"] = "crop";
    crop_meta["crop"] = {static_cast<int>(cropped.spec.origin.x),
                         static_cast<int>(cropped.spec.origin.y), cropped.spec.width,
                         cropped.spec.height};
    crop_meta["viewport"] = std::to_string(cropped.spec.width) + "x" + std::to_string(cropped.spec.height);
    const ImageRef crop_ref = make_image_ref(encode_png(cropped.image));
    element_samples(parts[i], cropped.page, crop_ref, {TaskKind::Grounding, TaskKind::Referring},
                    res, config, derive_seed(seed, "crop-qa"), crop_meta);

    if (std::any_of(p.page.elements.begin(), p.page.elements.end(),
                    [](const ElementAnnotation& e) { return !e.description.empty(); })) {
      Rng hl_rng(derive_seed(seed, "highlight"));
      json meta = stage_meta(p, config, "augment");
      meta["augment"] = "highlight";
      HighlightResult hl =
          make_highlight_sample(p.page, screenshot, res.templates, hl_rng, ac.overlay, meta);
      parts[i].push_back(std::move(hl.sample));
    }

    if (ac.icons_per_page > 0 && !res.icons.empty()) {
      Rng icon_rng(derive_seed(seed, "icons"));
      EmbedResult embedded =
          embed_icons(p.page, screenshot, res.icons, icon_rng, ac.icons_per_page, ac.icons);
      if (!embedded.icons.empty()) {
        PageAnnotation with_icons = p.page;
        for (const auto& icon : embedded.icons) with_icons.elements.push_back(icon);
        json meta = stage_meta(p, config, "augment");
        meta["augment"] = "icons";
        meta["embedded"] = embedded.icons.size();
        const ImageRef ref = make_image_ref(encode_png(embedded.image));
        element_samples(parts[i], with_icons, ref,
                        {TaskKind::IconGrounding, TaskKind::IconReferring}, res, config,
                        derive_seed(seed, "icon-qa"), meta);
      }
    }
  });
  collect(report, errors, stems(pages));
  std::vector<QASample> out = flatten(parts);
  if (!res.icons.empty()) {
    Rng rng(derive_seed(config.seed, "icon-bank", 0, "augment"));
    for (QASample& s : make_icon_pair_samples(res.icons, res.templates, rng,
                                              {{"seed", config.seed}, {"stage", "augment"}})) {
      out.push_back(std::move(s));
    }
  }
  report.samples = out.size();
  return out;
}

std::vector<QASample> synthesize_advanced(const std::vector<AnnotatedPage>& pages,
                                          const Resources& res, const PipelineConfig& config,
                                          StageReport& report) {
  report.stage = "advanced";
  std::vector<std::vector<QASample>> parts(pages.size());
  std::vector<std::vector<std::string>> logs(pages.size());
  const int workers = std::min(config.workers, config.advanced.max_concurrent);
  const auto errors = parallel_for(pages.size(), workers, [&](std::size_t i) {
    const AnnotatedPage& p = pages[i];
    if (p.page.elements.size() < kMinMarkedElements) return;
    const MarkedScreenshot marked = render_marks(p.page, decode_png(*p.screenshot.png));
    const std::uint64_t seed = page_seed(config, p.page, "advanced");
    for (TaskKind task : config.advanced.tasks) {
      Rng rng(derive_seed(seed, to_string(task)));
      AdvancedOutcome outcome = run_advanced(p.page, p.screenshot, marked, *res.client, task,
                                             res.prompts, res.templates, rng,
                                             stage_meta(p, config, "advanced"));
      for (auto& s : outcome.samples) parts[i].push_back(std::move(s));
      for (auto& e : outcome.errors) logs[i].push_back(std::move(e));
    }
  });
  collect(report, errors, stems(pages));
  for (auto& l : logs) {
    for (auto& e : l) report.errors.push_back(std::move(e));
  }
  std::vector<QASample> out = flatten(parts);
  report.samples = out.size();
  return out;
}

Manifest write_stage_output(const std::vector<QASample>& samples, const std::string& out_dir,
                            const PipelineConfig& config) {
  return write_dataset(dedup(samples), out_dir, config.seed, config.digest);
}

Manifest run_pipeline(const std::string& snapshot_dir, const std::string& out_dir,
                      const PipelineConfig& config, const std::vector<Stage>& stages,
                      const Resources& res, std::vector<StageReport>& reports) {
  reports.emplace_back();
  const std::vector<AnnotatedPage> pages =
      run_annotate(snapshot_dir, (fs::path(out_dir) / "annotations").string(), config, reports.back());
  std::vector<QASample> samples;
  for (Stage stage : stages) {
    reports.emplace_back();
    std::vector<QASample> part;
    switch (stage) {
      case Stage::Synthesize: part = synthesize_elementary(pages, res, config, reports.back()); break;
      case Stage::Augment: part = synthesize_augmented(pages, res, config, reports.back()); break;
      case Stage::Advanced: part = synthesize_advanced(pages, res, config, reports.back()); break;
    }
    for (auto& s : part) samples.push_back(std::move(s));
  }
  return write_stage_output(samples, (fs::path(out_dir) / "dataset").string(), config);
}

}  // namespace guiforge
