#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coalbase {

struct check_item {
  std::string name;
  bool pass = true;
  std::string witness;  // replayable input for failures, empty on pass
};

struct check_report {
  std::vector<check_item> items;
  long cases_run = 0;

  void record(std::string name, bool pass, std::string witness = "") {
    items.push_back({std::move(name), pass, std::move(witness)});
  }

  // keep only the first failure per check name so reports stay readable
  void record_once(const std::string& name, bool pass, const std::string& witness = "") {
    for (auto& it : items)
      if (it.name == name) {
        if (it.pass && !pass) {
          it.pass = false;
          it.witness = witness;
        }
        return;
      }
    items.push_back({name, pass, witness});
  }

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }

  const check_item* first_failure() const {
    for (const auto& it : items)
      if (!it.pass) return &it;
    return nullptr;
  }

  void merge(const check_report& o, const std::string& prefix = "") {
    for (const auto& it : o.items)
      items.push_back({prefix + it.name, it.pass, it.witness});
    cases_run += o.cases_run;
  }
};

}  // namespace coalbase
