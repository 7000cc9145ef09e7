#include "gact/pipeline.hpp"

#include <algorithm>
#include <map>

#include "gact/error.hpp"

namespace gact {

FactorPipeline run_factor_pipeline(const LevelSystem& ls,
                                   const AlmostNormalityReport& h_report, int level) {
  if (h_report.verdict != AlmostNormalityReport::Verdict::Yes)
    throw Error("factor pipeline needs an almost-normality certificate");
  if (h_report.certificate_level > level)
    throw Error("level is shallower than the certificate level");
  if (level < 1 || level > ls.depth()) throw Error("level out of range");

  FactorPipeline out;
  out.level = level;
  out.level_system_gset = level_gset(ls, level);
  out.h_image = subgroup_image_at_level(ls, level, h_report.subgroup_elements);

  PermGroup context = out.level_system_gset.context_group();
  ConjugateOrbit orbit = conjugate_orbit(context, out.h_image);

  // Certificate conjugates (element lists in the ambient group) must map
  // one-to-one onto the conjugates of the image; the match fixes the block
  // indices build_factor will use.
  std::map<SubgroupHandle, int> level_index;
  for (std::size_t i = 0; i < orbit.conjugates.size(); ++i)
    level_index[orbit.conjugates[i]] = static_cast<int>(i);
  for (const auto& c : h_report.conjugates) {
    SubgroupHandle image = subgroup_image_at_level(ls, level, c);
    auto it = level_index.find(image);
    if (it == level_index.end())
      throw Error("certificate conjugate has no image in the level group");
    out.block_of_certificate.push_back(it->second);
  }
  {
    std::vector<int> sorted = out.block_of_certificate;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != h_report.conjugates.size() ||
        h_report.conjugates.size() != orbit.conjugates.size())
      throw Error("conjugates collapse in the level group; deepen the level");
  }

  // phi on level cosets: the block of r*G_level is the conjugate r H r^-1.
  const GroupFamily& family = ls.family();
  std::map<std::vector<GroupElement>, int> cert_index;
  for (std::size_t i = 0; i < h_report.conjugates.size(); ++i)
    cert_index[h_report.conjugates[i]] = static_cast<int>(i);
  const auto& reps = ls.level(level).reps;
  out.phi.resize(reps.size());
  for (std::size_t x = 0; x < reps.size(); ++x) {
    GroupElement rinv = family.inverse(reps[x]);
    std::vector<GroupElement> conj;
    conj.reserve(h_report.subgroup_elements.size());
    for (const auto& h : h_report.subgroup_elements)
      conj.push_back(family.multiply(family.multiply(reps[x], h), rinv));
    std::sort(conj.begin(), conj.end());
    auto it = cert_index.find(conj);
    if (it == cert_index.end()) throw Error("coset representative escapes the orbit");
    out.phi[x] = out.block_of_certificate[it->second];
  }

  out.factor = build_factor(out.level_system_gset, out.phi, out.h_image);

  // Y's analyses run against H's image in Y's own image group (subgroup
  // comparisons happen in the deepest common quotient).
  std::vector<Permutation> h_on_y;
  for (const auto& e : out.h_image.elements)
    h_on_y.push_back(induced_on_target(out.factor.pi, e));
  std::sort(h_on_y.begin(), h_on_y.end());
  h_on_y.erase(std::unique(h_on_y.begin(), h_on_y.end()), h_on_y.end());
  out.h_image_on_y = SubgroupHandle{std::move(h_on_y)};

  out.partition_of_y = xh_partition(out.factor.quotient, out.h_image_on_y);
  out.urs_of_y = urs_irs_report(out.factor.quotient, out.h_image_on_y);

  out.yh_mask.assign(out.factor.quotient.degree, false);
  for (int y = 0; y < out.factor.quotient.degree; ++y)
    if (out.partition_of_y.block_of[y] >= 0) out.yh_mask[y] = true;
  return out;
}

ExtensionPipeline run_extension_pipeline(const LevelSystem& ls,
                                         const AlmostNormalityReport& h_report,
                                         const FactorPipeline& fp,
                                         std::size_t index_cap) {
  ExtensionPipeline out;
  out.gamma_search = find_free_complement(ls, h_report, index_cap);
  if (!out.gamma_search.certificate)
    throw Error("no free complement found in the supplied quotient family");
  const SubgroupSpec& gamma = out.gamma_search.certificate->gamma;

  const GroupFamily& family = ls.family();
  out.gamma_quotient = quotient_by_subgroup(family, gamma, index_cap);
  out.gamma_cosets.degree = static_cast<int>(out.gamma_quotient.index());
  out.gamma_cosets.generators = out.gamma_quotient.generator_images;

  // Distinguished basepoint: the image of the identity coset when it lies
  // in Y_H, otherwise the first Y_H point.
  int candidate = fp.factor.pi.point_map[0];
  out.y0 = fp.yh_mask[candidate]
               ? candidate
               : static_cast<int>(std::find(fp.yh_mask.begin(), fp.yh_mask.end(), true) -
                                  fp.yh_mask.begin());

  out.extension =
      build_extension(fp.factor.quotient, fp.yh_mask, out.y0, out.gamma_cosets);

  // H cap (Gamma cap G_y0) = 1, read off the two component actions.
  out.residual_certificate_trivial = true;
  for (const auto& h : h_report.subgroup_elements) {
    if (h == family.identity()) continue;
    Permutation h_on_x = ls.level(fp.level).action_of(family, h);
    Permutation h_on_y = induced_on_target(fp.factor.pi, h_on_x);
    Permutation h_on_c = out.gamma_quotient.action_of(family, h);
    if (h_on_c.is_identity() && h_on_y.apply(out.y0) == out.y0)
      out.residual_certificate_trivial = false;
  }
  return out;
}

Permutation extension_action(const LevelSystem& ls, const FactorPipeline& fp,
                             const ExtensionPipeline& ep, const GroupElement& g) {
  const GroupFamily& family = ls.family();
  Permutation g_on_x = ls.level(fp.level).action_of(family, g);
  Permutation g_on_y = induced_on_target(fp.factor.pi, g_on_x);
  Permutation g_on_c = ep.gamma_quotient.action_of(family, g);

  const auto& labels = ep.extension.point_labels;
  std::map<std::pair<int, int>, int> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    label_index[labels[i]] = static_cast<int>(i);

  std::vector<int> images(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) {
    auto [yy, ww] = labels[p];
    auto it = label_index.find({g_on_y.apply(yy), g_on_c.apply(ww)});
    if (it == label_index.end())
      throw Error("element does not preserve the extension orbit");
    images[p] = it->second;
  }
  return Permutation(std::move(images));
}

RoundTrip refactor_extension(const LevelSystem& ls,
                             const AlmostNormalityReport& h_report,
                             const FactorPipeline& fp, const ExtensionPipeline& ep) {
  RoundTrip out;
  const FiniteGSet& ext = ep.extension.extension;

  // H's image in the extension context.
  std::vector<Permutation> h_ext_elements;
  for (const auto& h : h_report.subgroup_elements)
    h_ext_elements.push_back(extension_action(ls, fp, ep, h));
  std::sort(h_ext_elements.begin(), h_ext_elements.end());
  h_ext_elements.erase(std::unique(h_ext_elements.begin(), h_ext_elements.end()),
                       h_ext_elements.end());
  SubgroupHandle h_ext{h_ext_elements};

  // Match certificate conjugates to conjugates of h_ext in the extension
  // context, fixing the reindex from factor blocks to extension blocks.
  PermGroup ext_context = ext.context_group();
  ConjugateOrbit ext_orbit = conjugate_orbit(ext_context, h_ext);
  std::map<SubgroupHandle, int> ext_index;
  for (std::size_t i = 0; i < ext_orbit.conjugates.size(); ++i)
    ext_index[ext_orbit.conjugates[i]] = static_cast<int>(i);

  std::vector<int> block_to_ext(h_report.conjugates.size(), -1);
  for (std::size_t c = 0; c < h_report.conjugates.size(); ++c) {
    std::vector<Permutation> image;
    for (const auto& e : h_report.conjugates[c])
      image.push_back(extension_action(ls, fp, ep, e));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto it = ext_index.find(SubgroupHandle{image});
    if (it == ext_index.end())
      throw Error("certificate conjugate has no image in the extension context");
    block_to_ext[fp.block_of_certificate[c]] = it->second;
  }
  for (int b : block_to_ext)
    if (b < 0) throw Error("block without extension conjugate");

  // Block map on the extension: the block of (y, w) is the block of y.
  std::vector<int> phi_ext(ext.degree);
  for (int p = 0; p < ext.degree; ++p)
    phi_ext[p] = block_to_ext[fp.factor.block_of_y[ep.extension.pi.point_map[p]]];

  out.refactor = build_factor(ext, phi_ext, h_ext);

  // Mediating map: a refactor class maps to the common Y point under pi.
  out.mediating.assign(out.refactor.quotient.degree, -1);
  bool well_defined = true;
  for (int p = 0; p < ext.degree; ++p) {
    int cls = out.refactor.pi.point_map[p];
    int y = ep.extension.pi.point_map[p];
    if (out.mediating[cls] == -1)
      out.mediating[cls] = y;
    else if (out.mediating[cls] != y)
      well_defined = false;
  }
  bool bijective = well_defined &&
                   out.refactor.quotient.degree == fp.factor.quotient.degree;
  if (bijective) {
    std::vector<int> seen(fp.factor.quotient.degree, 0);
    for (int v : out.mediating) {
      if (v < 0 || seen[v]) {
        bijective = false;
        break;
      }
      seen[v] = 1;
    }
  }
  bool equivariant = bijective;
  if (bijective) {
    for (std::size_t k = 0; k < ext.generators.size() && equivariant; ++k)
      for (int c = 0; c < out.refactor.quotient.degree; ++c)
        if (out.mediating[out.refactor.quotient.generators[k].apply(c)] !=
            fp.factor.quotient.generators[k].apply(out.mediating[c]))
          equivariant = false;
  }
  out.reproduces_y = well_defined && bijective && equivariant;
  return out;
}

}  // namespace gact
