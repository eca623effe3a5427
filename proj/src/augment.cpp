#include "guiforge/augment.hpp"

#include <cmath>

#include "guiforge/codec.hpp"
#include "guiforge/elementary.hpp"

namespace guiforge {

using nlohmann::json;

bool crop_spec_valid(const CropSpec& spec, int image_width, int image_height,
                     const CropSettings& settings) {
  if (spec.width <= 0 || spec.height <= 0) return false;
  if (spec.origin.x < 0 || spec.origin.y < 0) return false;
  if (spec.origin.x + spec.width > image_width || spec.origin.y + spec.height > image_height) {
    return false;
  }
  const double fw = static_cast<double>(spec.width) / image_width;
  const double fh = static_cast<double>(spec.height) / image_height;
  return fw >= settings.min_fraction && fw <= settings.max_fraction &&
         fh >= settings.min_fraction && fh <= settings.max_fraction;
}

bool keeps_element(const BBox& bbox, const CropSpec& spec) {
  auto inter = intersect(bbox, spec.rect());
  if (!inter) return false;
  return inter->area() / bbox.area() >= spec.keep_threshold;
}

PageAnnotation apply_crop(const PageAnnotation& page, const CropSpec& spec) {
  PageAnnotation out = page;
  out.viewport = Viewport{spec.width, spec.height};
  out.elements.clear();
  for (const ElementAnnotation& e : page.elements) {
    if (!keeps_element(e.bbox, spec)) continue;
    ElementAnnotation moved = e;
    moved.bbox = translate(*intersect(e.bbox, spec.rect()), -spec.origin.x, -spec.origin.y);
    out.elements.push_back(std::move(moved));
  }
  return out;
}

CropResult random_crop(const PageAnnotation& page, const Image& screenshot, Rng& rng,
                       const CropSettings& settings) {
  const int w = screenshot.width();
  const int h = screenshot.height();
  auto draw_side = [&](int full) {
    const auto lo = static_cast<std::int64_t>(std::ceil(settings.min_fraction * full));
    const auto hi = static_cast<std::int64_t>(std::floor(settings.max_fraction * full));
    return static_cast<int>(rng.uniform_int(std::max<std::int64_t>(lo, 1), std::max(hi, lo)));
  };
  for (int attempt = 0; attempt < settings.max_tries; ++attempt) {
    CropSpec spec;
    spec.keep_threshold = settings.keep_threshold;
    spec.width = draw_side(w);
    spec.height = draw_side(h);
    spec.origin.x = static_cast<double>(rng.uniform_int(0, std::max(0, w - spec.width)));
    spec.origin.y = static_cast<double>(rng.uniform_int(0, std::max(0, h - spec.height)));
    if (!crop_spec_valid(spec, w, h, settings)) continue;
    PageAnnotation remapped = apply_crop(page, spec);
    if (remapped.elements.empty()) continue;
    Image img = crop(screenshot, static_cast<int>(spec.origin.x), static_cast<int>(spec.origin.y),
                     spec.width, spec.height);
    return {std::move(img), std::move(remapped), spec};
  }
  CropSpec identity{{0.0, 0.0}, w, h, settings.keep_threshold};
  return {screenshot, apply_crop(page, identity), identity};
}

PixelRect overlay_rect(const BBox& bbox, int inflate, int image_width, int image_height) {
  PixelRect r = to_pixel_rect(bbox);
  r.x1 = std::max(0, r.x1 - inflate);
  r.y1 = std::max(0, r.y1 - inflate);
  r.x2 = std::min(image_width, r.x2 + inflate);
  r.y2 = std::min(image_height, r.y2 + inflate);
  return r;
}

HighlightResult make_highlight_sample(const PageAnnotation& page, const Image& screenshot,
                                      const TemplateBank& bank, Rng& rng,
                                      const OverlaySettings& overlay, const json& base_meta) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < page.elements.size(); ++i) {
    if (!page.elements[i].description.empty()) pool.push_back(i);
  }
  if (pool.empty()) throw NoEligibleElements("no described element to highlight on " + page.url);
  const std::size_t target = pool[rng.index(pool.size())];
  const ElementAnnotation& e = page.elements[target];

  Image image = screenshot;
  const PixelRect r = overlay_rect(e.bbox, overlay.inflate, image.width(), image.height());
  stroke_rect(image, r.x1, r.y1, r.x2, r.y2, overlay.stroke_width, overlay.color);

  const auto& templates = bank.templates(TaskKind::HighlightBox);
  const std::string& question = templates[rng.index(templates.size())];
  json meta = base_meta;
  meta["template"] = question;
  meta["targets"] = json::array({e.node_id});
  meta["mode"] = "bbox";
  meta["overlay"] = {{"stroke", overlay.stroke_width},
                     {"inflate", overlay.inflate},
                     {"color", {overlay.color.r, overlay.color.g, overlay.color.b}}};
  std::string answer = e.description + " " + encode_bbox(e.bbox, page.viewport);
  ImageRef ref = make_image_ref(encode_png(image));
  QASample sample = make_sample(ref, TaskKind::HighlightBox, page.source,
                                {{Role::User, question}, {Role::Assistant, std::move(answer)}},
                                std::move(meta));
  return {std::move(image), std::move(sample), target};
}

EmbedResult embed_icons(const PageAnnotation& page, const Image& screenshot, const IconBank& bank,
                        Rng& rng, int n, const IconEmbedSettings& settings) {
  if (bank.empty()) throw IconBankError("embed_icons: empty icon bank");
  EmbedResult out{screenshot, {}};
  std::vector<BBox> occupied;
  for (const ElementAnnotation& e : page.elements) occupied.push_back(e.bbox);
  const int w = screenshot.width();
  const int h = screenshot.height();
  for (int draw = 0; draw < n; ++draw) {
    const IconEntry& entry = bank.entries()[rng.index(bank.size())];
    const int side = static_cast<int>(rng.uniform_int(settings.min_side, settings.max_side));
    if (side > w || side > h) continue;
    for (int attempt = 0; attempt < settings.max_tries; ++attempt) {
      const int x = static_cast<int>(rng.uniform_int(0, w - side));
      const int y = static_cast<int>(rng.uniform_int(0, h - side));
      const BBox rect{static_cast<double>(x), static_cast<double>(y), static_cast<double>(x + side),
                      static_cast<double>(y + side)};
      bool clear = true;
      for (const BBox& b : occupied) {
        if (overlaps(rect, b)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      alpha_composite(out.image, resize_nearest(entry.glyph, side, side), x, y);
      ElementAnnotation icon;
      icon.node_id = -static_cast<NodeId>(out.icons.size()) - 1;
      icon.kind = ElementKind::Icon;
      icon.bbox = rect;
      icon.description = entry.description;
      icon.description_source = DescriptionSource::Alt;
      icon.interactive = false;
      out.icons.push_back(std::move(icon));
      occupied.push_back(rect);
      break;
    }
  }
  return out;
}

std::vector<QASample> make_icon_pair_samples(const IconBank& bank, const TemplateBank& templates,
                                             Rng& rng, const json& base_meta) {
  std::vector<QASample> out;
  const auto& questions = templates.templates(TaskKind::IconDescribe);
  const int offset = (kIconCanvasSide - kIconRenderSide) / 2;
  for (const IconEntry& entry : bank.entries()) {
    Image canvas(kIconCanvasSide, kIconCanvasSide, Rgb{255, 255, 255});
    alpha_composite(canvas, resize_nearest(entry.glyph, kIconRenderSide, kIconRenderSide), offset,
                    offset);
    const std::string& question = questions[rng.index(questions.size())];
    json meta = base_meta;
    meta["icon"] = entry.name;
    meta["template"] = question;
    out.push_back(make_sample(make_image_ref(encode_png(canvas)), TaskKind::IconDescribe, "icon",
                              {{Role::User, question}, {Role::Assistant, entry.description}},
                              std::move(meta)));
  }
  return out;
}

}  // namespace guiforge
