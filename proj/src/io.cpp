#include "bwm/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace bwm::io {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, (field.empty() ? "document" : field) + ": " + what, {field});
}

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(join_path(path, key), "required field is missing");
  return *it;
}

std::string string_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_string()) schema(join_path(path, key), "must be a string");
  return v.get<std::string>();
}

std::vector<std::string> strings_at(const Json& v, const std::string& field) {
  if (!v.is_array()) schema(field, "must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) schema(field, "must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

/// Values of a label -> number map in `labels` order; keys must match exactly.
Vector<double> number_map(const Json& obj, const std::vector<std::string>& labels, const std::string& field) {
  if (!obj.is_object()) schema(field, "must be an object mapping criterion to number");
  Vector<double> out(static_cast<Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto it = obj.find(labels[k]);
    if (it == obj.end()) schema(field + "." + labels[k], "missing entry");
    if (!it->is_number()) schema(field + "." + labels[k], "must be a number");
    out(static_cast<Index>(k)) = it->get<double>();
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(labels.begin(), labels.end(), key) == labels.end())
      schema(field + "." + key, "is not one of the criteria");
  }
  return out;
}

Index position(const std::vector<std::string>& labels, const std::string& label, const std::string& field) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) schema(field, "\"" + label + "\" is not one of the criteria");
  return it - labels.begin();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string cr_text(const std::optional<double>& cr) { return cr ? fixed4(*cr) : "undefined"; }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ReadFailure, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string detail = e.what();
    if (const auto p = detail.find(": "); p != std::string::npos) detail = detail.substr(p + 2);
    throw Error(ErrorCode::MalformedJson,
                "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + detail);
  }
}

ValidatedPcs<double> pcs_from_json(const Json& doc, int default_scale_max, const std::string& path) {
  if (!doc.is_object()) schema(path, "PCS document must be a JSON object");
  RawPcs<double> raw;
  raw.criteria = strings_at(member(doc, "criteria", path), join_path(path, "criteria"));
  raw.best = position(raw.criteria, string_at(doc, "best", path), join_path(path, "best"));
  raw.worst = position(raw.criteria, string_at(doc, "worst", path), join_path(path, "worst"));
  raw.best_to_others =
      number_map(member(doc, "best_to_others", path), raw.criteria, join_path(path, "best_to_others"));
  raw.others_to_worst =
      number_map(member(doc, "others_to_worst", path), raw.criteria, join_path(path, "others_to_worst"));
  raw.scale_max = default_scale_max;
  if (const auto it = doc.find("scale_max"); it != doc.end()) {
    if (!it->is_number_integer()) schema(join_path(path, "scale_max"), "must be an integer");
    raw.scale_max = it->get<int>();
  }
  try {
    return validate_pcs(std::move(raw));
  } catch (const Error& e) {
    if (path.empty()) throw;
    std::vector<std::string> fields;
    for (const auto& f : e.fields()) fields.push_back(join_path(path, f));
    throw Error(e.code(), path + ": " + e.what(), fields);
  }
}

ValidatedPcs<double> parse_pcs(std::string_view text, int default_scale_max) {
  return pcs_from_json(parse_json(text), default_scale_max);
}

Json pcs_to_json(const Pcs<double>& pcs) {
  Json j;
  j["criteria"] = pcs.criteria();
  j["best"] = pcs.label(pcs.best());
  j["worst"] = pcs.label(pcs.worst());
  Json ab = Json::object(), aw = Json::object();
  for (Index i = 0; i < pcs.n(); ++i) {
    ab[pcs.label(i)] = pcs.a_best(i);
    aw[pcs.label(i)] = pcs.a_worst(i);
  }
  j["best_to_others"] = ab;
  j["others_to_worst"] = aw;
  j["scale_max"] = pcs.scale_max();
  return j;
}

ValidatedPcs<double> parse_pcs_csv(std::string_view text, int default_scale_max) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  std::map<std::string, std::size_t> col;
  RawPcs<double> raw;
  raw.scale_max = default_scale_max;
  std::vector<double> ab, aw;
  int best = -1, worst = -1;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto cells = split(lines[ln], ',');
    if (cells.size() == 1 && cells[0].empty()) continue;
    const std::string where = "line " + std::to_string(ln + 1);
    if (col.empty()) {
      for (std::size_t k = 0; k < cells.size(); ++k) col[cells[k]] = k;
      for (const char* need : {"criterion", "best_to_others", "others_to_worst", "role"}) {
        if (!col.count(need)) schema(where, std::string("header lacks column ") + need);
      }
      continue;
    }
    if (cells.size() < col.size()) schema(where, "expected " + std::to_string(col.size()) + " cells");
    const auto number = [&](const char* name) {
      const std::string& s = cells[col[name]];
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != s.size()) schema(where + "." + name, "\"" + s + "\" is not a number");
      return v;
    };
    raw.criteria.push_back(cells[col["criterion"]]);
    ab.push_back(number("best_to_others"));
    aw.push_back(number("others_to_worst"));
    const std::string& role = cells[col["role"]];
    const int idx = static_cast<int>(raw.criteria.size()) - 1;
    if (role == "best") {
      if (best >= 0) schema(where + ".role", "more than one best criterion");
      best = idx;
    } else if (role == "worst") {
      if (worst >= 0) schema(where + ".role", "more than one worst criterion");
      worst = idx;
    } else if (!role.empty()) {
      schema(where + ".role", "role must be best, worst or empty");
    }
  }
  if (col.empty()) schema("", "CSV is empty");
  if (best < 0) schema("role", "no criterion has role best");
  if (worst < 0) schema("role", "no criterion has role worst");
  raw.best = best;
  raw.worst = worst;
  raw.best_to_others = Eigen::Map<Vector<double>>(ab.data(), static_cast<Index>(ab.size()));
  raw.others_to_worst = Eigen::Map<Vector<double>>(aw.data(), static_cast<Index>(aw.size()));
  return validate_pcs(std::move(raw));
}

namespace {

BlockInput block_from_json(const Json& block, const std::string& path, int default_scale_max,
                           std::vector<Warning>& warnings) {
  if (!block.is_object()) schema(path, "block must be an object");
  const bool has_pcs = block.contains("pcs"), has_weights = block.contains("weights");
  if (has_pcs == has_weights) schema(path, "block needs exactly one of \"pcs\" or \"weights\"");
  if (has_pcs) {
    auto v = pcs_from_json(block["pcs"], default_scale_max, path + ".pcs");
    for (auto& w : v.warnings) warnings.push_back({path + ".pcs." + w.field, w.message});
    return std::move(v.pcs);
  }
  const Json& obj = block["weights"];
  if (!obj.is_object()) schema(path + ".weights", "must be an object mapping label to number");
  WeightMap m;
  for (const auto& [key, v] : obj.items()) {
    if (!v.is_number()) schema(path + ".weights." + key, "must be a number");
    m[key] = v.get<double>();
  }
  return m;
}

}  // namespace

StudyDocument study_from_json(const Json& doc, int default_scale_max) {
  if (!doc.is_object()) schema("", "study document must be a JSON object");
  StudyDocument out;
  GroupStudy& s = out.study;
  s.categories = strings_at(member(doc, "categories", ""), "categories");
  s.experts = strings_at(member(doc, "experts", ""), "experts");
  const Json& drivers = member(doc, "drivers", "");
  if (!drivers.is_object()) schema("drivers", "must map category to driver list");
  for (const auto& [cat, list] : drivers.items()) s.drivers[cat] = strings_at(list, "drivers." + cat);

  if (const auto it = doc.find("category_input"); it != doc.end()) {
    if (!it->is_object()) schema("category_input", "must map expert to block");
    for (const auto& [expert, block] : it->items()) {
      s.category_input.emplace(expert,
                               block_from_json(block, "category_input." + expert, default_scale_max, out.warnings));
    }
  }
  if (const auto it = doc.find("driver_input"); it != doc.end()) {
    if (!it->is_object()) schema("driver_input", "must map expert to category blocks");
    for (const auto& [expert, blocks] : it->items()) {
      const std::string epath = "driver_input." + expert;
      if (!blocks.is_object()) schema(epath, "must map category to block");
      for (const auto& [cat, block] : blocks.items()) {
        s.driver_input[expert].emplace(cat,
                                       block_from_json(block, epath + "." + cat, default_scale_max, out.warnings));
      }
    }
  }
  if (const auto it = doc.find("reference"); it != doc.end()) out.reference = *it;
  return out;
}

StudyDocument parse_study(std::string_view text, int default_scale_max) {
  return study_from_json(parse_json(text), default_scale_max);
}

Json pivot_to_json(const Pcs<double>& pcs, const Pivot& pivot) {
  Json j;
  j["case"] = std::string(to_string(pivot.kind));
  j["label"] = to_string(pivot);
  Json crit = Json::array();
  if (pivot.first >= 0) crit.push_back(pcs.label(pivot.first));
  if (pivot.second >= 0) crit.push_back(pcs.label(pivot.second));
  j["criteria"] = crit;
  return j;
}

Json epsilon_table_to_json(const Pcs<double>& pcs, const EpsilonTable<double>& t) {
  const auto labels = [&](const std::vector<Index>& v) {
    Json a = Json::array();
    for (Index i : v) a.push_back(pcs.label(i));
    return a;
  };
  Json j;
  j["d1"] = labels(t.d1);
  j["d2"] = labels(t.d2);
  j["d3"] = labels(t.d3);
  Json single = Json::array();
  for (const auto& e : t.eps_single) single.push_back({{"criterion", pcs.label(e.index)}, {"value", e.value}});
  j["eps_single"] = single;
  Json pair = Json::array();
  for (const auto& e : t.eps_pair) pair.push_back({{"i", pcs.label(e.i)}, {"j", pcs.label(e.j)}, {"value", e.value}});
  j["eps_pair"] = pair;
  j["eta"] = t.eta;
  j["pivot"] = pivot_to_json(pcs, t.pivot);
  Json att = Json::array();
  for (const auto& p : t.attaining) att.push_back(pivot_to_json(pcs, p));
  j["attaining"] = att;
  return j;
}

Json solution_to_json(const Pcs<double>& pcs, const AnalyticalSolution<double>& sol) {
  Json j;
  Json w = Json::object();
  for (Index i = 0; i < pcs.n(); ++i) w[pcs.label(i)] = sol.weights(i);
  j["weights"] = w;
  j["pivot"] = pivot_to_json(pcs, sol.pivot);
  j["sigma"] = sol.sigma;
  j["epsilon_star"] = sol.epsilon_star;
  j["eta"] = sol.eta;
  j["ci"] = sol.ci;
  j["cr"] = optional_number(sol.cr);
  return j;
}

std::string render_solution(const Pcs<double>& pcs, const AnalyticalSolution<double>& sol, Format format) {
  if (format == Format::Json) {
    Json j = pcs_to_json(pcs);
    j["solution"] = solution_to_json(pcs, sol);
    return j.dump(2) + "\n";
  }
  const std::vector<std::pair<std::string, std::string>> metrics{
      {"case", to_string(sol.pivot)}, {"sigma", fixed4(sol.sigma)}, {"epsilon_star", fixed4(sol.epsilon_star)},
      {"eta", fixed4(sol.eta)},       {"CI", fixed4(sol.ci)},       {"CR", cr_text(sol.cr)}};
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "criterion,weight\n";
    for (Index i = 0; i < pcs.n(); ++i) os << pcs.label(i) << ',' << fixed4(sol.weights(i)) << '\n';
    for (const auto& [k, v] : metrics) os << k << ',' << v << '\n';
    return os.str();
  }
  std::size_t width = 14;
  for (const auto& l : pcs.criteria()) width = std::max(width, l.size() + 2);
  os << pad("criterion", width) << "weight\n";
  for (Index i = 0; i < pcs.n(); ++i) {
    std::string tag = i == pcs.best() ? "  (best)" : i == pcs.worst() ? "  (worst)" : "";
    os << pad(pcs.label(i), width) << fixed4(sol.weights(i)) << tag << '\n';
  }
  os << '\n';
  for (const auto& [k, v] : metrics) os << pad(k, width) << v << '\n';
  return os.str();
}

Json equivalence_to_json(const EquivalenceClass& cls, bool include_uncertified) {
  Json j;
  j["mode"] = std::string(to_string(cls.mode));
  j["count"] = cls.count;
  j["candidates"] = cls.candidates;
  Json members = Json::array();
  for (const auto& m : cls.members) members.push_back(pcs_to_json(m));
  j["members"] = members;
  if (include_uncertified) {
    Json u = Json::array();
    for (const auto& m : cls.uncertified) u.push_back(pcs_to_json(m));
    j["uncertified"] = u;
  }
  return j;
}

Json aggregation_to_json(const AggregationResult& r) {
  Json j;
  j["categories"] = r.categories;
  j["experts"] = r.experts;
  j["drivers"] = r.drivers;
  const auto by_expert = [&](const Matrix<double>& m, const std::vector<std::string>& cols) {
    Json out = Json::object();
    for (std::size_t e = 0; e < r.experts.size(); ++e) {
      Json row = Json::object();
      for (std::size_t c = 0; c < cols.size(); ++c) row[cols[c]] = m(static_cast<Index>(e), static_cast<Index>(c));
      out[r.experts[e]] = row;
    }
    return out;
  };
  j["category_weights"] = by_expert(r.category_weights, r.categories);
  j["local_weights"] = by_expert(r.local_weights, r.drivers);
  j["global_weights"] = by_expert(r.global_weights, r.drivers);
  Json fin = Json::object();
  for (std::size_t d = 0; d < r.drivers.size(); ++d) fin[r.drivers[d]] = r.final_weights(static_cast<Index>(d));
  j["final_weights"] = fin;
  Json ranking = Json::array();
  for (std::size_t k = 0; k < r.ranking.size(); ++k) {
    const auto d = static_cast<std::size_t>(r.ranking[k]);
    ranking.push_back({{"rank", k + 1}, {"driver", r.drivers[d]}, {"final_weight", r.final_weights(r.ranking[k])}});
  }
  j["ranking"] = ranking;
  Json blocks = Json::array();
  for (const auto& b : r.per_block_cr) {
    blocks.push_back({{"expert", b.expert},
                      {"block", b.block},
                      {"epsilon_star", b.epsilon_star},
                      {"cr", optional_number(b.cr)},
                      {"case", to_string(b.pivot)}});
  }
  j["per_block_cr"] = blocks;
  return j;
}

std::string render_aggregation(const AggregationResult& r, Format format) {
  if (format == Format::Json) return aggregation_to_json(r).dump(2) + "\n";
  std::vector<std::size_t> rank_of(r.drivers.size());
  for (std::size_t k = 0; k < r.ranking.size(); ++k) rank_of[static_cast<std::size_t>(r.ranking[k])] = k + 1;

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"driver"});
  for (const auto& e : r.experts) rows[0].push_back(e);
  rows[0].insert(rows[0].end(), {"final", "rank"});
  for (std::size_t d = 0; d < r.drivers.size(); ++d) {
    std::vector<std::string> row{r.drivers[d]};
    for (std::size_t e = 0; e < r.experts.size(); ++e)
      row.push_back(fixed4(r.global_weights(static_cast<Index>(e), static_cast<Index>(d))));
    row.push_back(fixed4(r.final_weights(static_cast<Index>(d))));
    row.push_back(std::to_string(rank_of[d]));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size() + 2);
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (format == Format::Csv) {
        os << (c ? "," : "") << row[c];
      } else {
        os << (c + 1 < row.size() ? pad(row[c], width[c]) : row[c]);
      }
    }
    os << '\n';
  }
  return os.str();
}

Json verification_to_json(const Pcs<double>& pcs, const VerificationReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["tolerance"] = rep.tolerance;
  j["epsilon_analytical"] = rep.epsilon_analytical;
  j["epsilon_simplex"] = rep.epsilon_simplex;
  j["delta_epsilon"] = rep.delta_epsilon;
  j["max_weight_delta"] = rep.max_weight_delta;
  j["oracle_status"] = std::string(to_string(rep.oracle_status));
  j["oracle_iterations"] = rep.oracle_iterations;
  Json w = Json::object();
  for (Index i = 0; i < pcs.n(); ++i)
    w[pcs.label(i)] = {{"analytical", rep.weights_analytical(i)}, {"simplex", rep.weights_simplex(i)}};
  j["weights"] = w;
  return j;
}

std::string render_verification(const Pcs<double>& pcs, const VerificationReport& rep, Format format) {
  if (format == Format::Json) return verification_to_json(pcs, rep).dump(2) + "\n";
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "criterion,analytical,simplex\n";
    for (Index i = 0; i < pcs.n(); ++i)
      os << pcs.label(i) << ',' << fixed4(rep.weights_analytical(i)) << ',' << fixed4(rep.weights_simplex(i)) << '\n';
    os << "epsilon_star," << fixed4(rep.epsilon_analytical) << ',' << fixed4(rep.epsilon_simplex) << '\n';
    os << "delta_epsilon," << sci(rep.delta_epsilon) << "\nmax_weight_delta," << sci(rep.max_weight_delta)
       << "\nverdict," << (rep.pass ? "PASS" : "FAIL") << '\n';
    return os.str();
  }
  std::size_t width = 18;
  os << pad("criterion", width) << pad("analytical", 12) << "simplex\n";
  for (Index i = 0; i < pcs.n(); ++i)
    os << pad(pcs.label(i), width) << pad(fixed4(rep.weights_analytical(i)), 12) << fixed4(rep.weights_simplex(i))
       << '\n';
  os << pad("epsilon_star", width) << pad(fixed4(rep.epsilon_analytical), 12) << fixed4(rep.epsilon_simplex) << "\n\n";
  os << pad("delta_epsilon", width) << sci(rep.delta_epsilon) << '\n';
  os << pad("max_weight_delta", width) << sci(rep.max_weight_delta) << '\n';
  os << pad("tolerance", width) << sci(rep.tolerance) << '\n';
  os << pad("simplex", width) << to_string(rep.oracle_status) << ", " << rep.oracle_iterations << " pivots\n";
  os << pad("verdict", width) << (rep.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

Json error_to_json(const Error& e) {
  Json j;
  j["code"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  if (!e.fields().empty()) j["field"] = e.fields().front();
  if (e.fields().size() > 1) j["fields"] = e.fields();
  return j;
}

}  // namespace bwm::io
