#include "chainform/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace chainform {

void init_logging() {
    auto logger = spdlog::stderr_logger_mt("chainform");
    logger->set_pattern("[%H:%M:%S.%e] [%l] %v");
    spdlog::set_default_logger(logger);

    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("CHAINFORM_LOG")) {
        const auto parsed = spdlog::level::from_str(env);
        // from_str answers "off" for names it does not know
        if (parsed != spdlog::level::off || std::string(env) == "off") {
            level = parsed;
        }
    }
    spdlog::set_level(level);
}

}  // namespace chainform
