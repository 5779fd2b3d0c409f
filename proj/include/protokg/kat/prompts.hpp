#pragma once

#include "protokg/kat/kat.hpp"

#include <string>

namespace protokg::kat {

// Human-facing graph name used inside completion prompts.
std::string kg_display_name(kg::GraphTag tag);

// Deterministic prompt rendering; templates are data, substitution is
// exact-token replacement, identical inputs give identical bytes.
// Missing placeholder values raise UsageError.
std::string render_prompt(const KatInstance& instance);

} // namespace protokg::kat
