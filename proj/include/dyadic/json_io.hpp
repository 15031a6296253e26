#pragma once

#include <string>

#include <json.hpp>

#include "dyadic/lerner.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/step_function.hpp"
#include "dyadic/weighted.hpp"

namespace dyadic {

using json = nlohmann::json;

json to_json(const DyadicInterval& interval);
DyadicInterval interval_from_json(const json& j);

// {"depth": D, "cells": [...]}
json to_json(const StepFunction& f);
StepFunction step_function_from_json(const json& j);
StepFunction weight_from_json(const json& j);  // also checks positivity

// {"tau", "bound_constant", "entries": [{"q", "qp", "qpp", "a"}]}
json to_json(const HaarShiftSpec& spec);
HaarShiftSpec shift_spec_from_json(const json& j);

// {"root": [l, i], "generations": [[[l, i], ...], ...]}
json to_json(const LernerDecomposition& dec);
LernerDecomposition decomposition_from_json(const json& j, const StepFunction& f);

json to_json(const ApReport& report);
json to_json(const NormReport& report);
json to_json(const VerificationReport& report);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dyadic
