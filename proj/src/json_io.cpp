#include "convolab/json_io.hpp"

#include <fstream>

#include "convolab/error.hpp"

namespace convolab::io {

namespace {

std::size_t positive_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string("missing integer field '") + key + "'");
  }
  const auto v = j[key].get<long long>();
  if (v <= 0) throw Error(ErrorCode::SpecOutOfRange, std::string("'") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

}  // namespace

GroupSpec group_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::ParseError, "group spec must be an object with a string 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "cyclic") return GroupSpec::cyclic(positive_field(j, "n"));
  if (kind == "elementary_abelian_2") return GroupSpec::elementary_abelian_2(positive_field(j, "k"));
  if (kind == "dihedral") return GroupSpec::dihedral(positive_field(j, "n"));
  if (kind == "quaternion8") return GroupSpec::quaternion8();
  if (kind == "symmetric") return GroupSpec::symmetric(positive_field(j, "n"));
  if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array()) {
      throw Error(ErrorCode::ParseError, "product needs a 'factors' array");
    }
    std::vector<GroupSpec> factors;
    for (const auto& f : j["factors"]) factors.push_back(group_spec_from_json(f));
    return GroupSpec::product(std::move(factors));
  }
  if (kind == "table") {
    if (!j.contains("table") || !j["table"].is_array()) {
      throw Error(ErrorCode::ParseError, "table group needs a 'table' array");
    }
    CayleyTable t;
    for (const auto& row : j["table"]) {
      if (!row.is_array()) throw Error(ErrorCode::TableInvalid, "table rows must be arrays");
      std::vector<Element> r;
      for (const auto& v : row) {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
          throw Error(ErrorCode::TableInvalid, "table entries must be nonnegative integers");
        }
        r.push_back(v.get<Element>());
      }
      t.push_back(std::move(r));
    }
    return GroupSpec::raw(std::move(t));
  }
  throw Error(ErrorCode::ParseError, "unknown group kind '" + kind + "'");
}

json to_json(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Cyclic: return {{"kind", "cyclic"}, {"n", spec.n}};
    case GroupKind::ElementaryAbelian2: return {{"kind", "elementary_abelian_2"}, {"k", spec.k}};
    case GroupKind::Dihedral: return {{"kind", "dihedral"}, {"n", spec.n}};
    case GroupKind::Quaternion8: return {{"kind", "quaternion8"}};
    case GroupKind::Symmetric: return {{"kind", "symmetric"}, {"n", spec.n}};
    case GroupKind::Product: {
      json factors = json::array();
      for (const auto& f : spec.factors) factors.push_back(to_json(f));
      return {{"kind", "product"}, {"factors", factors}};
    }
    case GroupKind::Table: return {{"kind", "table"}, {"table", spec.table}};
  }
  return nullptr;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

ProbMeasure measure_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("group") || !j.contains("weights")) {
    throw Error(ErrorCode::ParseError, "measure needs 'group' and 'weights'");
  }
  json group_json = j["group"];
  if (group_json.is_string()) group_json = read_json_file(base_dir / group_json.get<std::string>());
  const GroupPtr group = make_group(group_spec_from_json(group_json));
  if (!j["weights"].is_array()) throw Error(ErrorCode::ParseError, "'weights' must be an array");
  std::vector<Rational> w;
  for (const auto& v : j["weights"]) {
    if (v.is_string()) {
      w.push_back(parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      w.emplace_back(v.get<long>());
    } else {
      throw Error(ErrorCode::ParseError, "weights must be \"p/q\" strings or integers");
    }
  }
  return ProbMeasure(group, std::move(w));
}

json weights_to_json(const std::vector<Rational>& w) {
  json out = json::array();
  for (const auto& q : w) out.push_back(format_rational(q));
  return out;
}

json to_json(const ProbMeasure& mu) {
  return {{"group", to_json(mu.g().spec())}, {"weights", weights_to_json(mu.weights())}};
}

json to_json(const RegularityVerdict& v) {
  return {
      {"regular", v.is_regular()},
      {"witness", v.witness() ? weights_to_json(v.witness()->weights()) : json(nullptr)},
      {"reflexive_witness",
       v.reflexive_witness() ? weights_to_json(v.reflexive_witness()->weights()) : json(nullptr)},
      {"method", std::string(to_string(v.method()))},
      {"detail", v.detail()},
  };
}

json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_rational(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ObstructionResult& r) {
  return {{"obstructed", r.obstructed},
          {"threshold", format_rational(r.threshold)},
          {"det", r.det ? json(format_rational(*r.det)) : json(nullptr)}};
}

namespace {

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const UnitaryDual& dual) {
  json irreps = json::array();
  for (const auto& r : dual.irreps) {
    json chars = json::array();
    for (Element g = 0; g < dual.group->order(); ++g) chars.push_back(complex_json(r.character(g)));
    irreps.push_back({{"label", r.label}, {"dim", r.dim}, {"character", chars}});
  }
  return {{"group", to_json(dual.group->spec())}, {"irreps", irreps}};
}

json to_json(const CompatibleFunction& gamma) {
  json blocks = json::array();
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    blocks.push_back({{"irrep", gamma.dual()->irreps[i].label}, {"matrix", matrix_json(gamma[i])}});
  }
  return blocks;
}

}  // namespace convolab::io
