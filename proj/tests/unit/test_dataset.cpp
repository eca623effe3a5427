#include <gtest/gtest.h>

#include <algorithm>

#include "guiforge/dataset.hpp"
#include "support.hpp"

using namespace guiforge;

namespace {

ImageRef png_image(int w, int h, std::uint8_t shade) {
  return make_image_ref(encode_png(Image(w, h, Rgb{shade, shade, shade})));
}

QASample sample(const ImageRef& img, TaskKind task, const std::string& q, const std::string& a,
                const std::string& source = "fixture", const std::string& url = "https://a.test/") {
  return make_sample(img, task, source, {{Role::User, q}, {Role::Assistant, a}},
                     {{"url", url}, {"seed", 1}});
}

}  // namespace

TEST(Dataset, EmptyDatasetIsValid) {
  gftest::TempDir dir;
  const Manifest m = write_dataset({}, dir.str(), 3);
  EXPECT_EQ(m.records, 0u);
  EXPECT_EQ(m.images, 0u);
  EXPECT_EQ(m.digest, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(read_manifest(dir.str()), m);
  EXPECT_TRUE(read_dataset(dir.str()).empty());
  const StatsReport st = compute_stats(dir.str());
  EXPECT_EQ(st.records, 0u);
  EXPECT_TRUE(st.source_fractions().empty());
}

TEST(Dataset, SharedImagesAreWrittenOnce) {
  gftest::TempDir dir;
  const ImageRef img = png_image(8, 8, 10);
  std::vector<QASample> s{sample(img, TaskKind::Grounding, "a", "(0.1,0.1)"),
                          sample(img, TaskKind::OCR, "b", "c"),
                          sample(img, TaskKind::Referring, "d", "e")};
  const Manifest m = write_dataset(s, dir.str(), 9, "cfg");
  EXPECT_EQ(m.records, 3u);
  EXPECT_EQ(m.images, 1u);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : gftest::fs::directory_iterator(dir / kImageDir)) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(gftest::read_file(dir / img.path), *img.png);
  EXPECT_EQ(read_manifest(dir.str()).created_with_seed, 9u);
  EXPECT_EQ(read_manifest(dir.str()).config_digest, "cfg");
}

TEST(Dataset, IdenticalInputsGiveIdenticalDigests) {
  gftest::TempDir a, b;
  const ImageRef img = png_image(4, 4, 1);
  std::vector<QASample> s{sample(img, TaskKind::PageTitle, "t?", "Title")};
  EXPECT_EQ(write_dataset(s, a.str(), 1).digest, write_dataset(s, b.str(), 1).digest);
  EXPECT_EQ(gftest::read_file(a / kRecordFile), gftest::read_file(b / kRecordFile));
}

TEST(Dataset, RoundTripKeepsContent) {
  gftest::TempDir dir;
  const ImageRef img = png_image(5, 3, 200);
  QASample multi = make_sample(img, TaskKind::Grounding, "crawl",
                               {{Role::User, "q1 \"quoted\"\nline"}, {Role::Assistant, "(0.5,0.5)"},
                                {Role::User, "q2 数据"}, {Role::Assistant, "(0.1,0.2)"}},
                               {{"url", "u"}, {"targets", {1, 2}}});
  write_dataset({multi}, dir.str());
  const auto back = read_dataset(dir.str(), true);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], multi);
  EXPECT_EQ(back[0].id, multi.id);
  ASSERT_TRUE(back[0].image_bytes);
  EXPECT_EQ(*back[0].image_bytes, *img.png);
  EXPECT_EQ(back[0].qa_pairs(), 2u);
}

TEST(Dataset, DuplicateIdsAndMissingBytesFail) {
  gftest::TempDir dir;
  const ImageRef img = png_image(4, 4, 1);
  const QASample s = sample(img, TaskKind::OCR, "q", "a");
  EXPECT_THROW(write_dataset({s, s}, dir.str()), DatasetError);
  QASample orphan = sample(png_image(4, 4, 2), TaskKind::OCR, "q", "a");
  orphan.image_bytes.reset();
  gftest::TempDir other;
  EXPECT_THROW(write_dataset({orphan}, other.str()), DatasetError);
}

TEST(Dataset, CorruptRecordNamesItsLine) {
  gftest::TempDir dir;
  const ImageRef img = png_image(4, 4, 1);
  write_dataset({sample(img, TaskKind::OCR, "q", "a"), sample(img, TaskKind::OCR, "q2", "a2")}, dir.str());
  std::string text = gftest::read_file(dir / kRecordFile);
  text += "{\"id\": 3}\n";
  gftest::write_file(dir / kRecordFile, text);
  try {
    read_dataset(dir.str());
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  gftest::write_file(dir / kRecordFile, "not json\n");
  EXPECT_THROW(compute_stats(dir.str()), DatasetError);
}

TEST(Dedup, Examples) {
  const ImageRef img = png_image(4, 4, 1);
  const ImageRef other = png_image(4, 4, 2);
  const QASample a = sample(img, TaskKind::OCR, "q", "a");
  const QASample same_other_meta = make_sample(img, TaskKind::OCR, "x", {{Role::User, "q"}, {Role::Assistant, "a"}}, {{"url", "zzz"}});
  const QASample other_task = sample(img, TaskKind::Referring, "q", "a");
  const QASample other_image = sample(other, TaskKind::OCR, "q", "a");
  const auto out = dedup({a, same_other_meta, other_task, other_image, a});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], a);
  EXPECT_EQ(out[1], other_task);
  EXPECT_EQ(out[2], other_image);
  EXPECT_TRUE(dedup({}).empty());
}

TEST(DedupProperty, PlantedDuplicatesAreRemoved) {
  Rng rng(21);
  std::vector<ImageRef> images;
  for (int i = 0; i < 5; ++i) images.push_back(png_image(4, 4, static_cast<std::uint8_t>(i)));
  std::vector<QASample> base;
  for (int i = 0; i < 900; ++i) {
    base.push_back(sample(images[i % 5], kAllTasks[i % 6], "q" + std::to_string(i), "a"));
  }
  std::vector<QASample> all = base;
  for (int i = 0; i < 100; ++i) {
    all.insert(all.begin() + static_cast<long>(rng.index(all.size() + 1)), base[rng.index(base.size())]);
  }
  ASSERT_EQ(all.size(), 1000u);
  const auto once = dedup(all);
  EXPECT_EQ(once.size(), 900u);
  EXPECT_EQ(dedup(once).size(), once.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(dedup(once)[i], once[i]);
}

TEST(Split, Examples) {
  const ImageRef img = png_image(4, 4, 1);
  std::vector<QASample> s;
  for (int i = 0; i < 50; ++i) s.push_back(sample(img, TaskKind::OCR, "q" + std::to_string(i), "a", "f", "https://same.test/"));
  auto [train, val] = split(s, 0.0, 7);
  EXPECT_EQ(train.size(), 50u);
  EXPECT_TRUE(val.empty());
  std::tie(train, val) = split(s, 0.5, 7);
  EXPECT_TRUE(train.empty() || val.empty());  // one URL, one side
  EXPECT_THROW(split(s, 1.0, 7), std::invalid_argument);
  EXPECT_THROW(split(s, -0.1, 7), std::invalid_argument);
}

TEST(SplitProperty, ValidationShareTracksTheFraction) {
  std::size_t val = 0;
  for (int i = 0; i < 10'000; ++i) val += in_validation("https://site" + std::to_string(i) + ".test/", 0.1, 7);
  const double share = static_cast<double>(val) / 10'000;
  EXPECT_GE(share, 0.08);
  EXPECT_LE(share, 0.12);
}

TEST(Stats, CountsAndFractions) {
  const ImageRef a = png_image(4, 4, 1), b = png_image(4, 4, 2);
  std::vector<QASample> s;
  for (int i = 0; i < 10; ++i) s.push_back(sample(i % 2 ? a : b, TaskKind::Grounding, "g" + std::to_string(i), "x", "crawl"));
  for (int i = 0; i < 5; ++i) s.push_back(sample(a, TaskKind::OCR, "o" + std::to_string(i), "y", "fixture"));
  const StatsReport st = compute_stats(s);
  EXPECT_EQ(st.records, 15u);
  EXPECT_EQ(st.by_task.at("grounding"), 10u);
  EXPECT_EQ(st.by_task.at("ocr"), 5u);
  EXPECT_EQ(st.images, 2u);
  EXPECT_EQ(st.qa_pairs, 15u);
  EXPECT_NEAR(st.source_fractions().at("crawl"), 10.0 / 15.0, 1e-12);
  std::vector<QASample> reversed(s.rbegin(), s.rend());
  EXPECT_EQ(compute_stats(reversed), st);
  gftest::TempDir dir;
  write_dataset(s, dir.str());
  EXPECT_EQ(compute_stats(dir.str()), st);
  EXPECT_EQ(st.to_json()["by_task"]["ocr"], 5);
}

TEST(Stats, MultiTurnRecordCountsPairs) {
  const ImageRef a = png_image(4, 4, 1);
  const QASample s = make_sample(a, TaskKind::Referring, "f",
                                 {{Role::User, "1"}, {Role::Assistant, "a"}, {Role::User, "2"}, {Role::Assistant, "b"}},
                                 nlohmann::json::object());
  EXPECT_EQ(compute_stats(std::vector<QASample>{s}).qa_pairs, 2u);
}
