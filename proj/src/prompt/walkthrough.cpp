#include <regex>
#include <sstream>

#include "llmdoom/prompt/prompt.hpp"

namespace llmdoom::prompt {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<WalkthroughStep> parse_walkthrough(std::string_view text) {
  static const std::regex kStepStart(R"(^(\d+)\.(.*)$)");
  std::vector<WalkthroughStep> steps;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, kStepStart)) {
      const int index = std::stoi(m[1]);
      const int expected = static_cast<int>(steps.size()) + 1;
      if (index != expected) {
        throw PromptError("walkthrough line " + std::to_string(line_no) + ": expected step " +
                          std::to_string(expected) + ", found " + std::to_string(index));
      }
      steps.push_back({index, m[2]});
    } else if (!steps.empty()) {
      steps.back().text += '\n' + line;
    } else if (!trim(line).empty()) {
      throw PromptError("walkthrough line " + std::to_string(line_no) + ": text before step 1");
    }
  }
  for (auto& s : steps) s.text = trim(s.text);
  return steps;
}

std::string render_walkthrough(std::span<const WalkthroughStep> steps) {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += '\n';
    out += std::to_string(s.index) + ". " + s.text;
  }
  return out;
}

}  // namespace llmdoom::prompt
