#pragma once

#include <nlohmann/json.hpp>

#include "hpt/critical.hpp"
#include "hpt/energy.hpp"
#include "hpt/experiments.hpp"
#include "hpt/grid.hpp"
#include "hpt/hermite.hpp"
#include "hpt/inequalities.hpp"
#include "hpt/profile.hpp"

namespace hpt {

using json = nlohmann::json;

/// Fields: {"a", "b", "num_points", "values"}; doubles round-trip exactly.
void to_json(json& j, const Field& f);
Field field_from_json(const json& j);

void to_json(json& j, const EnergyBreakdown& b);
void to_json(json& j, const CouplingPolynomial& p);
void to_json(json& j, const CheckReport& r);
void to_json(json& j, const GNParams& gp);

/// Diagnostics only; the minimizer field is written separately as CSV.
void to_json(json& j, const ProfileRun& r);
void to_json(json& j, const ProfileResult& r);
void to_json(json& j, const ConstantsEstimate& e);

void to_json(json& j, const QuotientRun& r);
void to_json(json& j, const LambdaEstimate& e);
void to_json(json& j, const SubcriticalReport& r);

void to_json(json& j, const JumpFunction& u);
void from_json(const json& j, JumpFunction& u);

/// Config readers keep defaults for absent keys and reject unknown keys.
void to_json(json& j, const SweepConfig& c);
void from_json(const json& j, SweepConfig& c);
void to_json(json& j, const SweepRow& r);
void to_json(json& j, const RunRecord& r);

void to_json(json& j, const SupercriticalRow& r);
void to_json(json& j, const SupercriticalReport& r);

void to_json(json& j, const InitSpec& s);
void from_json(const json& j, InitSpec& s);
void to_json(json& j, const MinimizeConfig& c);
void from_json(const json& j, MinimizeConfig& c);
void to_json(json& j, const EnergyMinimum& m);

}  // namespace hpt
