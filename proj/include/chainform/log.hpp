#pragma once

namespace chainform {

/// Routes spdlog's default logger to stderr at the level named by the
/// CHAINFORM_LOG environment variable (trace, debug, info, warn, error, off;
/// default warn).
void init_logging();

}  // namespace chainform
