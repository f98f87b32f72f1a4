#include "d2d/solution.hpp"

#include <algorithm>

#include "d2d/errors.hpp"
#include "d2d/json_util.hpp"

namespace d2d {

using json_util::json;

std::vector<int> ClusterSolution::outage() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < head_of.size(); ++i) {
    if (head_of[i] == kNone) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> ClusterSolution::members_of(int h) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < head_of.size(); ++i) {
    if (head_of[i] == h && static_cast<int>(i) != h) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> ClusterSolution::member_counts() const {
  std::vector<int> counts(head_of.size(), 0);
  for (std::size_t i = 0; i < head_of.size(); ++i) {
    const int h = head_of[i];
    if (h != kNone && h != static_cast<int>(i) && h >= 0 &&
        static_cast<std::size_t>(h) < head_of.size()) {
      ++counts[static_cast<std::size_t>(h)];
    }
  }
  return counts;
}

int ClusterSolution::ap_of(int h) const {
  for (std::size_t k = 0; k < heads.size(); ++k) {
    if (heads[k] == h) return ap_of_head[k];
  }
  return kNone;
}

ClusterSolution prune_to_link_budget(const Scenario& s, const RadioParams& radio,
                                     std::vector<int> head_of, const std::vector<int>& heads,
                                     const std::vector<int>& ap_of_head) {
  const std::size_t n = s.n_devices();
  ClusterSolution sol;

  std::vector<bool> live_head(n, false);
  for (std::size_t k = 0; k < heads.size(); ++k) {
    const int h = heads[k];
    const int ap = ap_of_head[k];
    const bool linked = ap != kNone && snr(lr_power(s, ap, h, radio), radio) >= radio.snr_min_lr;
    if (linked) {
      live_head[static_cast<std::size_t>(h)] = true;
      sol.heads.push_back(h);
      sol.ap_of_head.push_back(ap);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const int h = head_of[i];
    if (h == kNone) continue;
    if (!live_head[static_cast<std::size_t>(h)]) {
      head_of[i] = kNone;
      continue;
    }
    if (h != static_cast<int>(i) &&
        snr(sr_power(s, h, static_cast<int>(i), radio), radio) < radio.snr_min_sr) {
      head_of[i] = kNone;
    }
  }
  sol.head_of = std::move(head_of);
  return sol;
}

std::string solution_to_json(const ClusterSolution& sol) {
  json doc;
  doc["heads"] = sol.heads;
  doc["head_of"] = sol.head_of;
  doc["ap_of_head"] = sol.ap_of_head;
  doc["outage"] = sol.outage();
  return doc.dump(2) + "\n";
}

namespace {

std::vector<int> int_array(const json& doc, const char* key) {
  const json& v = json_util::require(doc, key, "");
  if (!v.is_array()) throw ParseError(std::string(key) + ": expected an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ParseError(std::string(key) + "[" + std::to_string(i) + "]: expected an integer");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

}  // namespace

ClusterSolution solution_from_json(std::string_view text) {
  const json doc = json_util::parse_document(text, "solution");
  json_util::require_keys(doc, {"heads", "head_of", "ap_of_head", "outage"}, "");
  ClusterSolution sol;
  sol.heads = int_array(doc, "heads");
  sol.head_of = int_array(doc, "head_of");
  sol.ap_of_head = int_array(doc, "ap_of_head");
  const std::vector<int> outage = int_array(doc, "outage");

  const int n = static_cast<int>(sol.head_of.size());
  if (sol.ap_of_head.size() != sol.heads.size()) {
    throw ValidationError("ap_of_head must have one entry per head");
  }
  for (int i = 0; i < n; ++i) {
    const int h = sol.head_of[static_cast<std::size_t>(i)];
    if (h != kNone && (h < 0 || h >= n)) {
      throw ValidationError("head_of[" + std::to_string(i) + "]: index out of range");
    }
  }
  for (int h : sol.heads) {
    if (h < 0 || h >= n) throw ValidationError("heads: index " + std::to_string(h) + " out of range");
  }
  if (outage != sol.outage()) {
    throw ValidationError("outage list disagrees with head_of");
  }
  return sol;
}

void save_solution(const ClusterSolution& sol, const std::filesystem::path& path) {
  json_util::write_file(path, solution_to_json(sol));
}

ClusterSolution load_solution(const std::filesystem::path& path) {
  return solution_from_json(json_util::read_file(path));
}

}  // namespace d2d
