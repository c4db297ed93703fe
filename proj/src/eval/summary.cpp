#include "vforge/eval/summary.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "vforge/eval/passk.hpp"

namespace vforge::eval {

EvalSummary summarize(const std::vector<SampleResult>& results, const std::vector<std::size_t>& ks,
                      const std::string& label) {
  EvalSummary s;
  s.label = label;
  s.ks = ks;
  std::map<std::string, std::size_t> index;
  for (const auto& r : results) {
    auto [it, fresh] = index.try_emplace(r.task_id, s.tasks.size());
    if (fresh) s.tasks.push_back({r.task_id, 0, 0, 0});
    auto& t = s.tasks[it->second];
    ++t.n;
    t.c += r.functional();
    t.c_syntax += r.syntax_pass;
  }
  for (auto k : ks) {
    double sum = 0, sum_syntax = 0;
    for (const auto& t : s.tasks) {
      if (k > t.n)
        throw std::invalid_argument("summarize: k=" + std::to_string(k) + " exceeds n=" + std::to_string(t.n) +
                                    " for task " + t.task_id);
      sum += pass_at_k(t.n, t.c, k);
      sum_syntax += pass_at_k(t.n, t.c_syntax, k);
    }
    const double m = s.tasks.empty() ? 0.0 : static_cast<double>(s.tasks.size());
    s.pass_at_k[k] = s.tasks.empty() ? 0.0 : sum / m;
    s.syntax_pass_at_k[k] = s.tasks.empty() ? 0.0 : sum_syntax / m;
  }
  return s;
}

MergedSummary merge_summaries(const std::vector<EvalSummary>& sets) {
  MergedSummary m;
  m.sets = sets;
  if (sets.empty()) return m;
  for (auto k : sets.front().ks) {
    double best = -1;
    for (const auto& s : sets) {
      const auto it = s.pass_at_k.find(k);
      if (it == s.pass_at_k.end()) continue;
      if (it->second > best) {
        best = it->second;
        m.best_set_label[k] = s.label;
      }
    }
    m.best_per_set[k] = best < 0 ? 0.0 : best;

    std::map<std::string, double> per_task;
    std::vector<std::string> order;
    for (const auto& s : sets)
      for (const auto& t : s.tasks) {
        if (k > t.n) continue;
        const double v = pass_at_k(t.n, t.c, k);
        auto [it, fresh] = per_task.try_emplace(t.task_id, v);
        if (fresh) order.push_back(t.task_id);
        else it->second = std::max(it->second, v);
      }
    double sum = 0;
    for (const auto& id : order) sum += per_task[id];
    m.best_per_task[k] = order.empty() ? 0.0 : sum / static_cast<double>(order.size());
  }
  return m;
}

namespace {

nlohmann::ordered_json summary_json(const EvalSummary& s) {
  nlohmann::ordered_json j;
  j["label"] = s.label;
  j["ks"] = s.ks;
  nlohmann::ordered_json pk, sk;
  for (const auto& [k, v] : s.pass_at_k) pk["pass@" + std::to_string(k)] = v;
  for (const auto& [k, v] : s.syntax_pass_at_k) sk["pass@" + std::to_string(k)] = v;
  j["functional"] = pk;
  j["syntax"] = sk;
  auto tasks = nlohmann::ordered_json::array();
  for (const auto& t : s.tasks) tasks.push_back({{"task_id", t.task_id}, {"n", t.n}, {"c", t.c}, {"c_syntax", t.c_syntax}});
  j["tasks"] = tasks;
  return j;
}

}  // namespace

std::string to_json(const EvalSummary& s) { return summary_json(s).dump(2); }

std::string to_json(const MergedSummary& m) {
  nlohmann::ordered_json j;
  auto sets = nlohmann::ordered_json::array();
  for (const auto& s : m.sets) sets.push_back(summary_json(s));
  j["sets"] = sets;
  nlohmann::ordered_json per_set, per_task;
  for (const auto& [k, v] : m.best_per_set)
    per_set["pass@" + std::to_string(k)] = {{"value", v}, {"set", m.best_set_label.at(k)}};
  for (const auto& [k, v] : m.best_per_task) per_task["pass@" + std::to_string(k)] = v;
  j["best_per_set"] = per_set;
  j["best_per_task"] = per_task;
  return j.dump(2);
}

std::string render_table(const MergedSummary& m) {
  if (m.sets.empty()) return "";
  const auto& ks = m.sets.front().ks;
  auto cell = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%10.2f", 100.0 * v);
    return std::string(buf);
  };
  std::string out = "set               ";
  for (auto k : ks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%10s", ("pass@" + std::to_string(k)).c_str());
    out += buf;
  }
  out += "\n";
  auto row = [&](const std::string& name, const std::map<std::size_t, double>& vals) {
    std::string line = name;
    line.resize(std::max<std::size_t>(line.size(), 18), ' ');
    for (auto k : ks) {
      const auto it = vals.find(k);
      line += it == vals.end() ? std::string(10, ' ') : cell(it->second);
    }
    out += line + "\n";
  };
  for (const auto& s : m.sets) row(s.label.empty() ? "results" : s.label, s.pass_at_k);
  if (m.sets.size() > 1) {
    row("best (per set)", m.best_per_set);
    row("best (per task)", m.best_per_task);
  }
  return out;
}

}  // namespace vforge::eval
