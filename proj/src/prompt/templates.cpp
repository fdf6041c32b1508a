#include <cstdlib>
#include <fstream>
#include <sstream>

#include "llmdoom/prompt/prompt.hpp"

#ifndef LLMDOOM_DATA_DIR
#define LLMDOOM_DATA_DIR "data"
#endif

namespace llmdoom::prompt {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PromptError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.ends_with("\r\n")) {
    text.resize(text.size() - 2);
  } else if (text.ends_with('\n')) {
    text.pop_back();
  }
  return text;
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("LLMDOOM_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LLMDOOM_DATA_DIR;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& data_dir) {
  const auto t = data_dir / "templates";
  PromptLibrary lib;
  lib.agent_system = read_text(t / "agent_system.txt");
  lib.agent_user = read_text(t / "agent_user.txt");
  lib.planner_system = read_text(t / "planner_system.txt");
  lib.planner_user = read_text(t / "planner_user.txt");
  lib.vision_system = read_text(t / "vision_system.txt");
  for (auto s : {Strategy::Naive, Strategy::Walkthrough, Strategy::Plan, Strategy::KLevels}) {
    lib.exemplars[s] = read_text(data_dir / "exemplars" / (std::string(to_string(s)) + ".txt"));
  }
  return lib;
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find_first_of("{}", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    if (tmpl[open] == '}') throw PromptError("unbalanced '}' in template");
    const auto close = tmpl.find('}', open);
    if (close == std::string_view::npos) throw PromptError("unterminated placeholder in template");
    const std::string name(tmpl.substr(open + 1, close - open - 1));
    const auto it = values.find(name);
    if (it == values.end()) throw PromptError("no value for placeholder {" + name + "}");
    out.append(tmpl.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 1;
  }
  return out;
}

}  // namespace llmdoom::prompt
