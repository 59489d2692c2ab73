// Copyright 2026 The textbeam Authors
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

// Line-protocol peer for exercising the external victim and masked-LM
// adapters.
//
//   stub_server uniform K          every text gets [1/K, ..., 1/K]
//   stub_server lexicon PATH       scores with a LexiconModel file
//   stub_server bad-sum            probabilities summing to 0.8
//   stub_server bad-id             echoes the wrong id
//   stub_server garbage            answers with a non-JSON line
//   stub_server exit               exits without answering
//   stub_server mlm-table PATH     masked-LM provider backed by a table file

#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "textbeam/masked_lm.h"
#include "textbeam/text.h"
#include "textbeam/victim.h"

using nlohmann::json;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: stub_server MODE [ARG]\n";
    return 2;
  }
  const std::string mode = argv[1];
  const std::string arg = argc > 2 ? argv[2] : "";

  std::optional<textbeam::LexiconModel> lexicon;
  if (mode == "lexicon") lexicon = textbeam::LexiconModel::Load(arg);
  std::optional<textbeam::TableMaskedLm> table;
  if (mode == "mlm-table") table = textbeam::TableMaskedLm::Load(arg);
  const std::size_t classes = mode == "uniform" ? std::stoul(arg) : 2;

  std::string line;
  while (std::getline(std::cin, line)) {
    if (mode == "exit") return 0;
    if (mode == "garbage") {
      std::cout << "not json" << std::endl;
      continue;
    }
    const json request = json::parse(line);
    json response;
    response["id"] = mode == "bad-id" ? request["id"].get<long long>() + 1
                                      : request["id"].get<long long>();
    if (table) {
      textbeam::Text text{request["tokens"].get<std::vector<std::string>>(),
                          std::nullopt};
      json words = json::array();
      json scores = json::array();
      for (const auto& p :
           table->Propose(text, request["mask_index"], request["top_n"])) {
        words.push_back(p.word);
        scores.push_back(p.score);
      }
      response["words"] = words;
      response["scores"] = scores;
    } else {
      json probs = json::array();
      for (const json& t : request["texts"]) {
        if (lexicon) {
          probs.push_back(
              lexicon->Score(textbeam::Tokenize(t.get<std::string>())));
        } else if (mode == "bad-sum") {
          probs.push_back({0.4, 0.4});
        } else {
          probs.push_back(std::vector<double>(classes, 1.0 / classes));
        }
      }
      response["probs"] = probs;
    }
    std::cout << response.dump() << std::endl;
  }
  return 0;
}
