#include "vforge/repair/stages.hpp"

#include <regex>
#include <stdexcept>

#include "vforge/core/error.hpp"
#include "vforge/core/text.hpp"
#include "vforge/repair/prompts.hpp"

namespace vforge::repair {

namespace {

llm::ProviderRequest make_request(const std::string& prompt, const std::string& id, const SamplingConfig& s) {
  llm::ProviderRequest r;
  r.user = prompt;
  r.temperature = s.temperature;
  r.top_p = s.top_p;
  r.max_tokens = s.max_tokens;
  r.request_id = id;
  return r;
}

// Line with heading decoration removed: leading '#', '*', '>', '-', spaces,
// a "1." style number, and every "**" / "__".
std::string heading_text(std::string_view line) {
  std::string s = text::trim_copy(line);
  s = text::replace_all(text::replace_all(s, "**", ""), "__", "");
  std::size_t i = 0;
  while (i < s.size() && (s[i] == '#' || s[i] == '>' || s[i] == '-' || s[i] == '*' || s[i] == ' ' || s[i] == '\t'))
    ++i;
  std::size_t j = i;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (j > i && j < s.size() && (s[j] == '.' || s[j] == ')')) i = j + 1;
  return text::trim_copy(std::string_view(s).substr(i));
}

// When `line` is "<key>" or "<key>: rest" (case-insensitive), the rest.
std::optional<std::string> keyed(const std::string& heading, std::string_view key) {
  const auto lower = text::to_lower(heading);
  if (!text::starts_with(lower, key)) return std::nullopt;
  const auto tail = std::string_view(heading).substr(key.size());
  const auto t = text::trim(tail);
  if (t.empty()) return std::string();
  if (t.front() != ':') return std::nullopt;
  return text::trim_copy(t.substr(1));
}

bool is_fence(std::string_view line) { return text::starts_with(text::trim(line), "```"); }

std::string strip_trailing_latex_break(std::string s) {
  s = text::trim_copy(s);
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "\\\\") == 0) s = text::trim_copy(s.substr(0, s.size() - 2));
  return s;
}

std::string normalized_code(const std::string& block) {
  const auto c = text::trim_copy(block);
  return c.empty() ? c : c + "\n";
}

}  // namespace

std::string pair_header(const CodePair& pair) {
  auto h = module_header_of(pair.problem);
  if (h.empty()) h = module_header_of(pair.correct);
  return h;
}

std::string complete_code(const CodePair& pair, const std::string& code) {
  return eval::extract_code(code, pair_header(pair)).code;
}

eval::EvalTask pair_task(const CodePair& pair) {
  eval::EvalTask t;
  t.id = pair.id;
  t.description = pair.problem;
  t.header = pair_header(pair);
  t.testbench_path = pair.testbench_path;
  return t;
}

PairCheck verify_pair(const CodePair& pair, const verilog::Simulator& sim, const eval::JudgeConfig& judge) {
  const auto task = pair_task(pair);
  return {eval::judge_sample(task, pair.correct, sim, judge), eval::judge_sample(task, pair.erroneous, sim, judge)};
}

std::optional<ErrorReport> parse_error_report(const std::string& text_in, const std::string& pair_id) {
  ErrorReport r;
  r.id = "report-" + pair_id;
  r.pair_id = pair_id;
  r.text = text::trim_copy(text_in);
  const auto lines = text::split_lines(text_in);
  bool in_code = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_fence(lines[i])) in_code = !in_code;
    if (in_code) continue;
    const auto h = heading_text(lines[i]);
    if (r.error_type.empty())
      if (auto v = keyed(h, "error type")) {
        r.error_type = strip_trailing_latex_break(*v);
        continue;
      }
    if (r.category.empty())
      if (auto v = keyed(h, "category")) {
        r.category = strip_trailing_latex_break(*v);
        continue;
      }
    if (auto v = keyed(h, "description")) {
      std::vector<std::string> rest{*v};
      rest.insert(rest.end(), lines.begin() + static_cast<std::ptrdiff_t>(i) + 1, lines.end());
      r.description = text::trim_copy(text::join(rest, "\n"));
      break;
    }
  }
  if (r.error_type.empty() || r.category.empty() || r.description.empty()) return std::nullopt;
  return r;
}

ErrorReport build_error_report(const CodePair& pair, llm::TextProvider& provider, const SamplingConfig& sampling) {
  const auto prompt = error_report_prompt(pair.problem, pair.erroneous, pair.correct);
  auto first = provider.complete(make_request(prompt, "report-" + pair.id + "-1", sampling));
  if (auto r = parse_error_report(first.text, pair.id)) return *r;
  auto second =
      provider.complete(make_request(prompt + error_report_reminder(), "report-" + pair.id + "-2", sampling));
  if (auto r = parse_error_report(second.text, pair.id)) return *r;
  throw ParseError("error report for " + pair.id + ": missing Error Type, Category or Description");
}

ConsistencyVerdict self_consistency_check(ErrorReport& report, const CodePair& pair, llm::TextProvider& provider,
                                          const verilog::Simulator& sim, const eval::JudgeConfig& judge,
                                          const SamplingConfig& sampling) {
  if (report.validated) throw std::logic_error("self_consistency_check: " + report.id + " is already validated");
  const auto prompt = self_consistency_prompt(pair.problem, pair.erroneous, report.text);
  ConsistencyVerdict v;
  v.response = provider.complete(make_request(prompt, "fix-" + report.id, sampling)).text;
  v.result = eval::judge_sample(pair_task(pair), v.response, sim, judge);
  v.validated = v.result.functional();
  report.validated = v.validated;
  return v;
}

std::optional<ParsedInjection> parse_injection(const std::string& text_in) {
  enum Section { Desc, Err, Hints, Out, Other };
  std::vector<std::string> desc, hints;
  std::optional<std::string> erroneous, repaired;
  Section section = Desc;
  bool in_code = false;
  std::vector<std::string> block;
  for (const auto& line : text::split_lines(text_in)) {
    if (is_fence(line)) {
      if (!in_code) {
        in_code = true;
        block.clear();
        continue;
      }
      in_code = false;
      const auto code = text::join(block, "\n");
      if (section == Err && !erroneous) erroneous = normalized_code(code);
      else if (section == Out && erroneous && !repaired) repaired = normalized_code(code);
      else if (section == Desc) desc.push_back("```\n" + code + "\n```");
      else if (section == Hints) hints.push_back("```\n" + code + "\n```");
      continue;
    }
    if (in_code) {
      block.push_back(line);
      continue;
    }
    const auto h = heading_text(line);
    std::optional<std::string> rest;
    Section next = Other;
    if ((rest = keyed(h, "problem description")) || (rest = keyed(h, "input"))) next = Desc;
    else if ((rest = keyed(h, "erroneous implementation"))) next = Err;
    else if ((rest = keyed(h, "hints for fixing")) || (rest = keyed(h, "hints"))) next = Hints;
    else if ((rest = keyed(h, "output")) || (rest = keyed(h, "corrected implementation"))) next = Out;
    if (rest) {
      section = next;
      if (!rest->empty()) {
        if (section == Desc) desc.push_back(*rest);
        if (section == Hints) hints.push_back(*rest);
      }
      continue;
    }
    if (section == Desc) desc.push_back(line);
    if (section == Hints) hints.push_back(line);
  }
  // An unterminated final block still counts.
  if (in_code && section == Out && erroneous && !repaired) repaired = normalized_code(text::join(block, "\n"));

  ParsedInjection p;
  p.problem_description = text::trim_copy(text::join(desc, "\n"));
  p.hints = text::trim_copy(text::join(hints, "\n"));
  if (!erroneous || !repaired || p.problem_description.empty() || p.hints.empty()) return std::nullopt;
  p.erroneous = *erroneous;
  p.repaired = *repaired;
  if (p.erroneous.empty() || p.repaired.empty()) return std::nullopt;
  if (text::normalize_whitespace(p.erroneous) == text::normalize_whitespace(p.repaired)) return std::nullopt;
  return p;
}

bool is_decline(const std::string& text_in) {
  static const std::regex re(
      R"((cannot|can ?not|can't|unable to|not possible to|impossible to|not feasible to)\b[^.\n]{0,60}\binject)",
      std::regex::icase);
  return std::regex_search(text_in, re);
}

std::string skip_reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::None: return "";
    case SkipReason::Declined: return "DECLINED";
    case SkipReason::Unparseable: return "UNPARSEABLE";
    case SkipReason::ProviderFailure: return "PROVIDER";
  }
  return "?";
}

InjectionOutcome inject_error(const ErrorReport& report, const SeedCode& seed, llm::TextProvider& provider,
                              const SamplingConfig& sampling) {
  if (!report.validated) throw std::logic_error("inject_error: " + report.id + " is not validated");
  const auto prompt = injection_prompt(report.text, seed.code);
  const auto base_id = "inject-" + report.pair_id + "-" + seed.id;
  InjectionOutcome out;
  std::optional<ParsedInjection> parsed;
  for (int attempt = 1; attempt <= 2 && !parsed; ++attempt) {
    std::string answer;
    try {
      answer = provider
                   .complete(make_request(attempt == 1 ? prompt : prompt + injection_reminder(),
                                          base_id + "-" + std::to_string(attempt), sampling))
                   .text;
    } catch (const llm::ProviderError& e) {
      out.skip = SkipReason::ProviderFailure;
      out.detail = e.what();
      return out;
    }
    parsed = parse_injection(answer);
    if (!parsed && is_decline(answer)) {
      out.skip = SkipReason::Declined;
      out.detail = text::trim_copy(answer).substr(0, 200);
      return out;
    }
  }
  if (!parsed) {
    out.skip = SkipReason::Unparseable;
    out.detail = "no Erroneous Implementation / Hints / Output sections after a format reminder";
    return out;
  }
  RepairRecord r;
  r.id = "repair-" + report.pair_id + "-" + seed.id;
  r.problem_description = parsed->problem_description;
  r.erroneous = parsed->erroneous;
  r.hints = parsed->hints;
  r.repaired = parsed->repaired;
  r.report_id = report.id;
  r.seed_id = seed.id;
  r.fingerprint = record_fingerprint(r);
  out.record = std::move(r);
  return out;
}

}  // namespace vforge::repair
