#pragma once

namespace kgwave {

// Routes the default spdlog logger to stderr and sets its level from
// KGWAVE_LOG (error | info | debug). Unset means error; an unknown value is
// reported once and treated as error.
void configure_logging_from_env();

}  // namespace kgwave
