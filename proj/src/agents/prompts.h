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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "core/types.h"

namespace decentllms::agents {

// Replaces every {{name}} with values.at(name). A placeholder without a value
// (or an unterminated "{{") is a template error.
std::string RenderTemplate(std::string_view text,
                           const std::map<std::string, std::string>& values);

// Built-in templates, embedded from assets/templates at build time.
std::string_view DefaultTemplate(Role role);

// Worker: role preamble, step-by-step instruction, task.
// Evaluator: role preamble, criteria, few-shot examples, JSON instruction,
// task and the answer under evaluation.
std::string RenderPrompt(Role role, std::string_view task,
                         std::string_view answer = {});

std::string LoadTemplate(const std::filesystem::path& path);

}  // namespace decentllms::agents
