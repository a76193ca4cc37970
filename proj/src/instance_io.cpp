#include "rmatch/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rmatch {

using json = nlohmann::ordered_json;

namespace {

BonusFunction bonus_from_json(const json& college) {
  if (college.contains("bands")) {
    std::vector<BandInterval> bands;
    for (const auto& b : college.at("bands")) {
      bands.push_back({b.at("label").get<std::string>(), b.at("first").get<int>(),
                       b.at("last").get<int>(), b.at("value").get<double>()});
    }
    return BonusFunction::banded(std::move(bands));
  }
  std::vector<double> table;
  if (college.contains("bonus")) {
    for (const auto& pair : college.at("bonus")) {
      int rank = pair.at(0).get<int>();
      if (rank != static_cast<int>(table.size()) + 1) {
        throw std::runtime_error("bonus ranks must be listed as 1, 2, 3, ...");
      }
      table.push_back(pair.at(1).get<double>());
    }
  }
  return BonusFunction(std::move(table));
}

json bonus_to_json(const BonusFunction& h, json& college) {
  if (h.is_banded()) {
    json bands = json::array();
    for (const auto& b : h.bands()) {
      bands.push_back({{"label", b.label}, {"first", b.first}, {"last", b.last}, {"value", b.value}});
    }
    college["bands"] = std::move(bands);
  } else {
    json table = json::array();
    for (int r = 1; r <= h.size(); ++r) table.push_back(json::array({r, h(r)}));
    college["bonus"] = std::move(table);
  }
  return college;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = json::parse(text);
  Instance inst;
  inst.f_max = doc.value("f_max", 100.0);
  for (const auto& s : doc.at("students")) {
    inst.students.push_back({s.at("id").get<std::string>(), s.at("score").get<double>()});
  }
  for (const auto& c : doc.at("colleges")) {
    inst.colleges.push_back({c.at("id").get<std::string>(), c.value("quota", 1),
                             c.value("alpha", 0.0), bonus_from_json(c)});
  }
  inst.student_prefs.assign(inst.students.size(), {});
  const auto& prefs = doc.at("prefs");
  for (auto it = prefs.begin(); it != prefs.end(); ++it) {
    auto s = inst.find_student(it.key());
    if (!s) throw std::runtime_error("prefs given for unknown student " + it.key());
    for (const auto& cid : it.value()) {
      auto c = inst.find_college(cid.get<std::string>());
      if (!c) {
        throw std::runtime_error("student " + it.key() + " lists unknown college " +
                                 cid.get<std::string>());
      }
      inst.student_prefs[*s].push_back(*c);
    }
  }
  return inst;
}

std::string format_instance(const Instance& inst) {
  json doc;
  doc["f_max"] = inst.f_max;
  json students = json::array();
  for (const auto& s : inst.students) students.push_back({{"id", s.id}, {"score", s.score}});
  doc["students"] = std::move(students);
  json colleges = json::array();
  for (const auto& c : inst.colleges) {
    json college = {{"id", c.id}, {"quota", c.quota}, {"alpha", c.alpha}};
    bonus_to_json(c.bonus, college);
    colleges.push_back(std::move(college));
  }
  doc["colleges"] = std::move(colleges);
  json prefs = json::object();
  for (int s = 0; s < inst.num_students(); ++s) {
    json list = json::array();
    if (s < static_cast<int>(inst.student_prefs.size())) {
      for (int c : inst.student_prefs[s]) list.push_back(inst.colleges.at(c).id);
    }
    prefs[inst.students[s].id] = std::move(list);
  }
  doc["prefs"] = std::move(prefs);
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << format_instance(instance);
}

void write_matching(std::ostream& os, const Instance& instance, const Matching& matching) {
  for (int s = 0; s < matching.num_students(); ++s) {
    os << instance.students[s].id << ','
       << (matching.matched(s) ? instance.colleges[matching[s]].id : std::string("-")) << '\n';
  }
}

Matching read_matching(std::istream& is, const Instance& instance) {
  Matching m(instance.num_students());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed matching line: " + line);
    auto s = instance.find_student(line.substr(0, comma));
    if (!s) throw std::runtime_error("unknown student in matching: " + line);
    std::string cid = line.substr(comma + 1);
    if (cid == "-") continue;
    auto c = instance.find_college(cid);
    if (!c) throw std::runtime_error("unknown college in matching: " + line);
    m.college_of[*s] = *c;
  }
  return m;
}

}  // namespace rmatch
