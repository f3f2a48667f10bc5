#pragma once

// Run report shared by the CLI and its tests. The payload is a JSON object;
// the human rendering prints one `path: value` line per leaf so that it can
// be parsed back into the same object.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace obs::cli {

using nlohmann::json;

struct Verdict {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct RunReport {
  std::string command;
  json inputs = json::object();
  json payload = json::object();
  std::vector<Verdict> verdicts;
  double elapsed_ms = 0;

  bool passed() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  void check(std::string name, bool pass, std::string detail = {}) { verdicts.push_back({std::move(name), pass, std::move(detail)}); }
};

inline json to_json(const RunReport& r) {
  json v = json::array();
  for (const auto& x : r.verdicts) v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"command", r.command}, {"inputs", r.inputs}, {"payload", r.payload}, {"verdicts", v}, {"passed", r.passed()},
          {"elapsed_ms", r.elapsed_ms}};
}

inline RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.payload = j.at("payload");
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back({v.at("name"), v.at("pass"), v.at("detail")});
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

namespace detail {

// Strings print bare unless they would read back as some other JSON value.
inline std::string leaf_text(const json& v) {
  if (!v.is_string()) return v.dump();
  const auto& s = v.get_ref<const std::string&>();
  if (s.empty() || s.front() == '"' || s.front() == ' ' || s.back() == ' ' || s.find('\n') != std::string::npos) return v.dump();
  if (json::accept(s)) return v.dump();
  return s;
}

inline void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), out);
  } else {
    out.emplace_back(path, leaf_text(v));
  }
}

inline void insert(json& root, const std::string& path, json value) {
  json* cur = &root;
  std::size_t pos = 0;
  while (true) {
    const auto dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    const bool index = !key.empty() && key.find_first_not_of("0123456789") == std::string::npos;
    json* next = nullptr;
    if (index && (cur->is_null() || cur->is_array())) {
      const auto i = static_cast<std::size_t>(std::stoul(key));
      if (cur->is_null()) *cur = json::array();
      while (cur->size() <= i) cur->push_back(nullptr);
      next = &(*cur)[i];
    } else {
      if (cur->is_null()) *cur = json::object();
      next = &(*cur)[key];
    }
    if (dot == std::string::npos) {
      *next = std::move(value);
      return;
    }
    cur = next;
    pos = dot + 1;
  }
}

}  // namespace detail

/// Payload lines in render order.
inline std::vector<std::pair<std::string, std::string>> payload_lines(const json& payload) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = payload.begin(); it != payload.end(); ++it) detail::flatten(it.value(), it.key(), out);
  return out;
}

inline void render_human(std::ostream& out, const RunReport& r) {
  out << "command: " << r.command << '\n';
  for (auto it = r.inputs.begin(); it != r.inputs.end(); ++it) out << "input " << it.key() << ": " << detail::leaf_text(it.value()) << '\n';
  out << "--\n";
  for (const auto& [k, v] : payload_lines(r.payload)) out << k << ": " << v << '\n';
  out << "--\n";
  for (const auto& v : r.verdicts) out << "check " << v.name << ": " << (v.pass ? "PASS" : "FAIL") << (v.detail.empty() ? "" : " (" + v.detail + ")") << '\n';
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

/// Reads the payload section of a human rendering back into JSON.
inline json parse_human_payload(std::istream& in) {
  std::string line;
  int section = 0;
  json payload = json::object();
  while (std::getline(in, line)) {
    if (line == "--") {
      if (++section == 2) break;
      continue;
    }
    if (section != 1) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw std::runtime_error("bad report line '" + line + "'");
    const std::string key = line.substr(0, colon), text = line.substr(colon + 2);
    json value = json::accept(text) ? json::parse(text) : json(text);
    detail::insert(payload, key, std::move(value));
  }
  return payload;
}

}  // namespace obs::cli
