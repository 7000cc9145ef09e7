#include "gact/config.hpp"

#include <sstream>

#include "gact/error.hpp"

namespace gact {

using nlohmann::json;

namespace {

Permutation parse_perm(const json& arr) {
  if (!arr.is_array()) throw ConfigError("permutation must be an array of images");
  std::vector<int> images;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw ConfigError("permutation image must be an integer");
    images.push_back(v.get<int>());
  }
  return Permutation(std::move(images));
}

GroupFamily parse_family(const json& doc) {
  if (!doc.is_object() || !doc.contains("type"))
    throw ConfigError("family needs a \"type\" field");
  const std::string type = doc.at("type").get<std::string>();
  if (type == "dihedral_infinite") return GroupFamily::dihedral_infinite();
  if (type == "free_abelian") {
    if (!doc.contains("rank")) throw ConfigError("free_abelian needs \"rank\"");
    return GroupFamily::free_abelian(doc.at("rank").get<int>());
  }
  if (type == "finite_perm") {
    if (!doc.contains("degree") || !doc.contains("generators"))
      throw ConfigError("finite_perm needs \"degree\" and \"generators\"");
    int degree = doc.at("degree").get<int>();
    std::vector<Permutation> gens;
    for (const auto& g : doc.at("generators")) {
      Permutation p = parse_perm(g);
      if (p.degree() != degree) throw ConfigError("generator degree mismatch");
      gens.push_back(std::move(p));
    }
    return GroupFamily::finite_perm(PermGroup(degree, std::move(gens)));
  }
  if (type == "direct_product") {
    if (!doc.contains("left") || !doc.contains("right"))
      throw ConfigError("direct_product needs \"left\" and \"right\"");
    return GroupFamily::direct_product(parse_family(doc.at("left")),
                                       parse_family(doc.at("right")));
  }
  throw ConfigError("unknown family type: " + type);
}

}  // namespace

SubgroupSpec parse_subgroup_spec(const json& doc, const GroupFamily& family) {
  if (!doc.is_object()) throw ConfigError("subgroup spec must be an object");
  if (doc.contains("whole_group")) return SubgroupSpec::whole_group(family);
  if (doc.contains("dihedral_power")) {
    if (family.kind() != GroupFamily::Kind::DihedralInfinite)
      throw ConfigError("dihedral_power spec outside a dihedral family");
    return SubgroupSpec::dihedral_power(doc.at("dihedral_power").get<int>());
  }
  if (doc.contains("dihedral_translations")) {
    if (family.kind() != GroupFamily::Kind::DihedralInfinite)
      throw ConfigError("dihedral_translations spec outside a dihedral family");
    return SubgroupSpec::dihedral_translations(
        doc.at("dihedral_translations").get<std::int64_t>());
  }
  if (doc.contains("lattice")) {
    if (family.kind() != GroupFamily::Kind::FreeAbelian)
      throw ConfigError("lattice spec outside a free-abelian family");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : doc.at("lattice")) {
      std::vector<std::int64_t> row;
      for (const auto& v : r) row.push_back(v.get<std::int64_t>());
      rows.push_back(std::move(row));
    }
    return SubgroupSpec::lattice(family.rank(), std::move(rows));
  }
  if (doc.contains("perm_elements")) {
    if (family.kind() != GroupFamily::Kind::FinitePerm)
      throw ConfigError("perm_elements spec outside a finite-perm family");
    std::vector<Permutation> elts;
    for (const auto& p : doc.at("perm_elements")) elts.push_back(parse_perm(p));
    for (const auto& p : elts)
      if (!family.base().contains(p))
        throw ConfigError("perm_elements entry outside the base group");
    return SubgroupSpec::finite_elements(std::move(elts));
  }
  if (doc.contains("perm_group")) {
    if (family.kind() != GroupFamily::Kind::FinitePerm)
      throw ConfigError("perm_group spec outside a finite-perm family");
    std::vector<Permutation> gens;
    for (const auto& p : doc.at("perm_group").at("generators"))
      gens.push_back(parse_perm(p));
    for (const auto& p : gens)
      if (!family.base().contains(p))
        throw ConfigError("perm_group generator outside the base group");
    SubgroupHandle closed = close_subgroup(family.base().degree(), gens);
    return SubgroupSpec::finite_elements(closed.elements);
  }
  if (doc.contains("product")) {
    if (family.kind() != GroupFamily::Kind::DirectProduct)
      throw ConfigError("product spec outside a direct-product family");
    return SubgroupSpec::product(
        parse_subgroup_spec(doc.at("product").at("left"), family.left_factor()),
        parse_subgroup_spec(doc.at("product").at("right"), family.right_factor()));
  }
  if (doc.contains("words")) {
    std::vector<std::vector<std::string>> words;
    for (const auto& w : doc.at("words")) {
      std::vector<std::string> word;
      for (const auto& l : w) word.push_back(l.get<std::string>());
      words.push_back(std::move(word));
    }
    // Validate the labels now so errors surface at parse time.
    for (const auto& w : words)
      for (const auto& l : w) family.generator(l);
    return SubgroupSpec::words(std::move(words));
  }
  throw ConfigError("unrecognized subgroup spec");
}

GroupChain RunConfig::group_chain() const {
  if (!family) throw ConfigError("config has no group family");
  return GroupChain{*family, chain};
}

LevelSystem RunConfig::build_levels(int depth_override) const {
  int d = depth_override >= 0 ? depth_override : depth;
  return LevelSystem(group_chain(), d, caps.index);
}

ParseResult parse_config(const std::string& text) {
  ParseResult out;
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    out.violations.push_back("document is not valid JSON");
    return out;
  }
  if (!doc.is_object()) {
    out.violations.push_back("document must be a JSON object");
    return out;
  }

  RunConfig cfg;
  cfg.echo = doc;

  if (!doc.contains("schema") || !doc.at("schema").is_number_integer() ||
      doc.at("schema").get<int>() != 1)
    out.violations.push_back("\"schema\" must be the integer 1");

  std::string kind = doc.value("kind", std::string("odometer"));
  if (kind == "odometer")
    cfg.kind = RunConfig::Kind::Odometer;
  else if (kind == "shift")
    cfg.kind = RunConfig::Kind::Shift;
  else
    out.violations.push_back("\"kind\" must be \"odometer\" or \"shift\"");

  if (doc.contains("caps")) {
    const auto& caps = doc.at("caps");
    auto read_cap = [&](const char* key, std::size_t& target) {
      if (!caps.contains(key)) return;
      const auto& v = caps.at(key);
      if (!v.is_number_integer() || v.get<long long>() <= 0) {
        out.violations.push_back(std::string("caps.") + key + " must be positive");
        return;
      }
      target = v.get<std::size_t>();
    };
    read_cap("enumeration", cfg.caps.enumeration);
    read_cap("index", cfg.caps.index);
    read_cap("closure", cfg.caps.closure);
  }
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();

  if (cfg.kind == RunConfig::Kind::Odometer || kind.empty()) {
    if (!doc.contains("family")) {
      out.violations.push_back("odometer config needs a \"family\"");
    } else {
      try {
        cfg.family = parse_family(doc.at("family"));
      } catch (const Error& e) {
        out.violations.push_back(e.what());
      }
    }
    if (cfg.family && doc.contains("chain")) {
      if (!doc.at("chain").is_array()) {
        out.violations.push_back("\"chain\" must be an array of subgroup specs");
      } else {
        for (const auto& s : doc.at("chain")) {
          try {
            cfg.chain.push_back(parse_subgroup_spec(s, *cfg.family));
          } catch (const Error& e) {
            out.violations.push_back(std::string("chain: ") + e.what());
          }
        }
      }
    }
    if (cfg.family && doc.contains("H")) {
      try {
        cfg.subgroup = parse_subgroup_spec(doc.at("H"), *cfg.family);
      } catch (const Error& e) {
        out.violations.push_back(std::string("H: ") + e.what());
      }
    }
    if (doc.contains("depth")) {
      if (!doc.at("depth").is_number_integer() || doc.at("depth").get<int>() < 0)
        out.violations.push_back("depth must satisfy depth >= 0");
      else
        cfg.depth = doc.at("depth").get<int>();
    }
    if (cfg.depth > static_cast<int>(cfg.chain.size()) && cfg.family)
      out.violations.push_back("depth exceeds the chain length");
    // Nesting is re-checked at build time; pre-flag it here when the
    // membership oracles can already decide it.
    if (cfg.family && !cfg.chain.empty()) {
      try {
        GroupChain{*cfg.family, cfg.chain}.check_nested();
      } catch (const Error& e) {
        if (std::string(e.what()).find("not nested") != std::string::npos)
          out.violations.push_back(e.what());
      }
    }
    if (doc.contains("radius")) {
      if (!doc.at("radius").is_number_integer() || doc.at("radius").get<int>() < 0)
        out.violations.push_back("radius must satisfy radius >= 0");
      else
        cfg.radius = doc.at("radius").get<int>();
    }
    if (doc.contains("evidence_levels")) {
      int ev = doc.at("evidence_levels").get<int>();
      if (ev < 1)
        out.violations.push_back("evidence_levels must be positive");
      else
        cfg.evidence_levels = ev;
    }
  }

  if (cfg.kind == RunConfig::Kind::Shift && doc.contains("shift")) {
    const auto& s = doc.at("shift");
    cfg.shift.max_period = s.value("max_period", cfg.shift.max_period);
    cfg.shift.xh_period = s.value("xh_period", cfg.shift.xh_period);
    cfg.shift.window_min = s.value("window_min", cfg.shift.window_min);
    cfg.shift.window_max = s.value("window_max", cfg.shift.window_max);
    cfg.shift.holonomy_horizon = s.value("holonomy_horizon", cfg.shift.holonomy_horizon);
    if (cfg.shift.max_period < 1 || cfg.shift.max_period > 20)
      out.violations.push_back("shift.max_period must lie in [1, 20]");
    if (cfg.shift.xh_period < 1)
      out.violations.push_back("shift.xh_period must be positive");
    if (cfg.shift.window_min < 0 || cfg.shift.window_max < cfg.shift.window_min)
      out.violations.push_back("shift windows must satisfy 0 <= window_min <= window_max");
  }

  if (out.violations.empty()) out.config = std::move(cfg);
  return out;
}

json element_to_json(const GroupElement& e) {
  switch (e.kind()) {
    case GroupElement::Kind::Dihedral:
      return json{{"a", e.dihedral().shift}, {"b", e.dihedral().flip ? 1 : 0}};
    case GroupElement::Kind::Abelian:
      return json{{"vec", e.abelian()}};
    case GroupElement::Kind::Perm:
      return json{{"perm", e.perm().images()}};
    case GroupElement::Kind::Pair:
      return json{{"left", element_to_json(e.left())},
                  {"right", element_to_json(e.right())}};
  }
  return json{};
}

json subgroup_spec_to_json(const SubgroupSpec& s) {
  switch (s.tag()) {
    case SubgroupSpec::Tag::WholeGroup:
      return json{{"whole_group", true}};
    case SubgroupSpec::Tag::DihedralPower:
      return json{{"dihedral_power", s.dihedral_power_exponent()}};
    case SubgroupSpec::Tag::DihedralTranslations:
      return json{{"dihedral_translations", s.dihedral_modulus()}};
    case SubgroupSpec::Tag::Lattice:
      return json{{"lattice", s.lattice_basis()}};
    case SubgroupSpec::Tag::FiniteElements: {
      json arr = json::array();
      for (const auto& p : s.finite_element_list()) arr.push_back(p.images());
      return json{{"perm_elements", arr}};
    }
    case SubgroupSpec::Tag::Product:
      return json{{"product", json{{"left", subgroup_spec_to_json(s.left())},
                                   {"right", subgroup_spec_to_json(s.right())}}}};
    case SubgroupSpec::Tag::ConjugationKernel: {
      json groups = json::array();
      for (const auto& c : s.kernel_conjugates()) {
        json elems = json::array();
        for (const auto& e : c) elems.push_back(element_to_json(e));
        groups.push_back(elems);
      }
      return json{{"conjugation_kernel", groups}};
    }
    case SubgroupSpec::Tag::Words:
      return json{{"words", s.generator_words()}};
  }
  return json{};
}

}  // namespace gact
