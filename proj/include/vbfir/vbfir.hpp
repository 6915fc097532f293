#pragma once

#include "vbfir/analysis.hpp"
#include "vbfir/core.hpp"
#include "vbfir/fir_design.hpp"
#include "vbfir/frm.hpp"
#include "vbfir/io.hpp"
#include "vbfir/pascal.hpp"
#include "vbfir/reference.hpp"
#include "vbfir/remez.hpp"
#include "vbfir/src.hpp"
#include "vbfir/vbw.hpp"

namespace vbfir {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vbfir
