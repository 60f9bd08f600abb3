#include "kgwave/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace kgwave {

void configure_logging_from_env() {
  // stdout is reserved for command summaries.
  if (!spdlog::get("kgwave")) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("kgwave"));
  }
  const char* raw = std::getenv("KGWAVE_LOG");
  const std::string_view value = raw ? raw : "error";
  if (value == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (value == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
    if (value != "error") {
      spdlog::error("KGWAVE_LOG={} not understood; using error", value);
    }
  }
}

}  // namespace kgwave
