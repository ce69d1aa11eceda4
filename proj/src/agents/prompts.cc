// Copyright 2026 The DecentLLMs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agents/prompts.h"

#include <fstream>
#include <sstream>

#include "agents/templates_embedded.h"
#include "core/error.h"

namespace decentllms::agents {

std::string RenderTemplate(std::string_view text,
                           const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      return out;
    }
    const auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw InvalidArgument("template error: unterminated placeholder");
    }
    const std::string name(text.substr(open + 2, close - open - 2));
    auto it = values.find(name);
    if (it == values.end()) {
      throw InvalidArgument("template error: unknown placeholder '" + name + "'");
    }
    out.append(text.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 2;
  }
}

std::string_view DefaultTemplate(Role role) {
  return role == Role::kWorker ? kWorkerTemplate : kEvaluatorTemplate;
}

std::string RenderPrompt(Role role, std::string_view task, std::string_view answer) {
  std::map<std::string, std::string> values{{"task", std::string(task)}};
  if (role == Role::kEvaluator) values.emplace("answer", std::string(answer));
  return RenderTemplate(DefaultTemplate(role), values);
}

std::string LoadTemplate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open template " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace decentllms::agents
