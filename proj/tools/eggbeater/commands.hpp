#pragma once

#include "config.hpp"
#include "output.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace eggbeater::cli {

struct TaskFailure {
    std::string task;
    std::string kind;
    std::string message;
};

struct CommandResult {
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> svgs;  // file name, content
    std::vector<TaskFailure> failures;                      // numerical failures, per task
    bool validation_failed = false;
    std::string summary;
};

using Command = CommandResult (*)(const RunConfig&);

const std::map<std::string, std::pair<Command, std::string>>& commands();  // name -> (run, help)

}  // namespace eggbeater::cli
