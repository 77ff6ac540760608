// Copyright 2026 The dkibo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "dkibo/state_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace dkibo {

namespace {

using detail::FieldError;
using detail::Json;
using detail::ObjectReader;

constexpr std::string_view kStateSchema = "dkibo-state";

Json config_to_json(const CampaignConfig& c) {
  return Json{{"lower", c.space.lower()},
              {"upper", c.space.upper()},
              {"variant", std::string(to_string(c.variant))},
              {"acquisition", detail::to_json(c.acquisition)},
              {"regressor", detail::to_json(c.regressor)},
              {"mean_mode", std::string(to_string(c.mean_mode))},
              {"n_init", c.n_init},
              {"i_max", c.i_max},
              {"seed", c.seed},
              {"gp_restarts", c.gp_restarts},
              {"maximizer", detail::to_json(c.maximizer)}};
}

CampaignConfig config_from_json(const Json& j) {
  ObjectReader r(j, "config");
  r.only({"lower", "upper", "variant", "acquisition", "regressor", "mean_mode", "n_init", "i_max",
          "seed", "gp_restarts", "maximizer"});
  auto bound = [&](const char* key) {
    const Vector v = r.vector(key);
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  CampaignConfig c{SearchSpace(bound("lower"), bound("upper"))};
  const std::string variant = r.string("variant");
  const auto v = parse_variant(variant);
  if (!v) throw FieldError(r.child("variant"), "unknown variant '" + variant + "'");
  c.variant = *v;

  ObjectReader acq(r.at("acquisition"), r.child("acquisition"));
  acq.only({"kind", "kappa", "xi_offset", "epsilon", "schedule"});
  const std::string kind = acq.string("kind");
  const auto k = parse_acquisition_kind(kind);
  if (!k) throw FieldError(acq.child("kind"), "unknown acquisition '" + kind + "'");
  c.acquisition.kind = *k;
  c.acquisition.kappa = acq.number("kappa");
  c.acquisition.xi_offset = acq.number("xi_offset");
  c.acquisition.epsilon = acq.number("epsilon");
  c.acquisition.schedule_enabled = acq.boolean("schedule");

  c.regressor = detail::read_regressor(r.at("regressor"), r.child("regressor"));
  const std::string mean = r.string("mean_mode");
  const auto m = parse_mean_mode(mean);
  if (!m) throw FieldError(r.child("mean_mode"), "unknown mean mode '" + mean + "'");
  c.mean_mode = *m;
  c.n_init = r.integer("n_init");
  c.i_max = r.integer("i_max");
  c.acquisition.i_max = std::max(1, c.i_max);
  c.seed = r.unsigned_integer("seed");
  c.gp_restarts = r.integer("gp_restarts");
  detail::read_maximizer(r.at("maximizer"), r.child("maximizer"), c.maximizer);
  c.validate();
  return c;
}

Json params_to_json(const KernelParams& p) {
  return Json{{"length_scale", p.length_scale},
              {"signal_variance", p.signal_variance},
              {"noise_variance", p.noise_variance}};
}

KernelParams params_from_json(const Json& j) {
  ObjectReader r(j, "gp_warm_start");
  r.only({"length_scale", "signal_variance", "noise_variance"});
  return {r.number("length_scale"), r.number("signal_variance"), r.number("noise_variance")};
}

Session session_from_json(const Json& root) {
  ObjectReader r(root, "");
  const std::string schema = r.string("schema");
  if (schema != kStateSchema) throw FieldError("schema", "not a dkibo state file");
  const int version = r.integer("version");
  if (version != kStateSchemaVersion)
    throw StateError(StateErrorCode::schema_version,
                     "state file has schema version " + std::to_string(version) +
                         ", this build reads version " + std::to_string(kStateSchemaVersion));
  r.only({"schema", "version", "goal", "benchmark", "config", "observations", "gamma", "dropped",
          "drop_iteration", "gp_warm_start", "rng"});

  CampaignConfig config = config_from_json(r.at("config"));

  Goal goal = Goal::maximize;
  const std::string g = r.string("goal", "maximize");
  if (g == "minimize") goal = Goal::minimize;
  else if (g != "maximize") throw FieldError("goal", "expected maximize or minimize");

  std::vector<TrajectoryPoint> history;
  const Json& obs = r.at("observations");
  if (!obs.is_array()) throw FieldError("observations", "expected an array");
  for (std::size_t k = 0; k < obs.size(); ++k) {
    ObjectReader o(obs[k], "observations[" + std::to_string(k) + "]");
    o.only({"x", "y", "iteration", "initial", "gamma", "dropped"});
    TrajectoryPoint p;
    p.x = o.vector("x");
    if (static_cast<std::size_t>(p.x.size()) != config.space.dim())
      throw StateError(StateErrorCode::dimension_mismatch,
                       o.child("x") + ": expected " + std::to_string(config.space.dim()) +
                           " coordinates");
    if (!config.space.contains(p.x))
      throw StateError(StateErrorCode::out_of_bounds, o.child("x") + ": outside the search space");
    const double y = o.number("y");
    p.y = goal == Goal::minimize ? -y : y;
    p.iteration = o.integer("iteration");
    p.initial = o.boolean("initial");
    p.gamma = o.number("gamma");
    p.dropped = o.boolean("dropped");
    history.push_back(std::move(p));
  }

  std::optional<double> gamma;
  if (r.has("gamma") && !r.at("gamma").is_null()) gamma = r.number("gamma");
  AugmentState augment{gamma.value_or(0.0), r.boolean("dropped"), std::nullopt};
  if (r.has("drop_iteration") && !r.at("drop_iteration").is_null())
    augment.drop_iteration = r.integer("drop_iteration");
  std::optional<KernelParams> warm;
  if (r.has("gp_warm_start") && !r.at("gp_warm_start").is_null())
    warm = params_from_json(r.at("gp_warm_start"));

  std::optional<std::string> benchmark;
  if (r.has("benchmark") && !r.at("benchmark").is_null()) benchmark = r.string("benchmark");

  if (config.variant != Variant::dkibo && config.variant != Variant::linear_mean_es &&
      augment.dropped)
    throw FieldError("dropped", "only dkibo and linear_mean_es campaigns can drop");
  return Session{Campaign::restore(std::move(config), std::move(history), gamma, augment, warm),
                 goal, std::move(benchmark)};
}

}  // namespace

std::string_view to_string(StateErrorCode code) {
  switch (code) {
    case StateErrorCode::io: return "io";
    case StateErrorCode::parse: return "parse";
    case StateErrorCode::schema_version: return "schema_version";
    case StateErrorCode::dimension_mismatch: return "dimension_mismatch";
    case StateErrorCode::out_of_bounds: return "out_of_bounds";
    case StateErrorCode::non_finite: return "non_finite";
    case StateErrorCode::invalid_config: return "invalid_config";
  }
  return "io";
}

std::string serialize_session(const Session& s) {
  const Campaign& c = s.campaign;
  Json obs = Json::array();
  for (const auto& p : c.trajectory()) {
    obs.push_back(Json{{"x", detail::to_json(p.x)},
                       {"y", s.to_user(p.y)},
                       {"iteration", p.iteration},
                       {"initial", p.initial},
                       {"gamma", p.gamma},
                       {"dropped", p.dropped}});
  }
  Json root{{"schema", kStateSchema},
            {"version", kStateSchemaVersion},
            {"goal", s.goal == Goal::minimize ? "minimize" : "maximize"},
            {"benchmark", s.benchmark ? Json(*s.benchmark) : Json(nullptr)},
            {"config", config_to_json(c.config())},
            {"observations", std::move(obs)},
            {"gamma", c.gamma() ? Json(*c.gamma()) : Json(nullptr)},
            {"dropped", c.augment().dropped},
            {"drop_iteration",
             c.augment().drop_iteration ? Json(*c.augment().drop_iteration) : Json(nullptr)},
            {"gp_warm_start", c.warm_start() ? params_to_json(*c.warm_start()) : Json(nullptr)},
            {"rng", Json{{"algorithm", "xoshiro256**/splitmix64"}, {"seed", c.config().seed}}}};
  return root.dump(2) + "\n";
}

Session parse_session(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw StateError(StateErrorCode::parse, std::string("state file is not valid JSON: ") + e.what());
  }
  try {
    return session_from_json(root);
  } catch (const StateError&) {
    throw;
  } catch (const FieldError& e) {
    throw StateError(StateErrorCode::parse, e.what());
  } catch (const std::invalid_argument& e) {
    throw StateError(StateErrorCode::invalid_config, e.what());
  } catch (const std::out_of_range& e) {
    throw StateError(StateErrorCode::out_of_bounds, e.what());
  }
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError(StateErrorCode::io, "cannot read state file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_session(os.str());
}

void save_session(const std::filesystem::path& path, const Session& session) {
  const std::string text = serialize_session(session);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StateError(StateErrorCode::io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw StateError(StateErrorCode::io, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw StateError(StateErrorCode::io, "cannot replace " + path.string());
  }
}

Vector suggest(const Session& session) { return session.campaign.propose().x; }

void observe(Session& session, const std::optional<Vector>& x, double y) {
  if (!std::isfinite(y)) throw StateError(StateErrorCode::non_finite, "y must be finite");
  const CampaignConfig& config = session.campaign.config();
  if (x) {
    if (static_cast<std::size_t>(x->size()) != config.space.dim())
      throw StateError(StateErrorCode::dimension_mismatch,
                       "x has " + std::to_string(x->size()) + " coordinates, the space has " +
                           std::to_string(config.space.dim()));
    if (!x->allFinite()) throw StateError(StateErrorCode::non_finite, "x must be finite");
    if (!config.space.contains(*x))
      throw StateError(StateErrorCode::out_of_bounds, "x lies outside the search space");
  }
  const auto proposal = session.campaign.propose();
  bool matches = !x.has_value();
  if (x) {
    matches = true;
    const auto& lo = config.space.lower();
    const auto& hi = config.space.upper();
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const auto k = static_cast<Eigen::Index>(j);
      matches = matches && std::abs((*x)[k] - proposal.x[k]) <= 1e-9 * (hi[j] - lo[j]);
    }
  }
  Campaign updated = session.campaign;
  if (matches) updated.commit(proposal, session.to_internal(y));
  else updated.observe(*x, session.to_internal(y));
  session.campaign = std::move(updated);
}

}  // namespace dkibo
