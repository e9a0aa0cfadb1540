#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("pompeiu");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("POMPEIU_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);

  std::vector<std::string> args(argv + 1, argv + argc);
  pompeiu::cli::CommandResult result = pompeiu::cli::run(args);
  std::cout << result.output << std::flush;
  std::cerr << result.error;
  return result.exit_code;
}
