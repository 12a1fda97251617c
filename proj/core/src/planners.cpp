#include "rrdt/planners.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rrdt/errors.hpp"

namespace rrdt {

std::string_view planner_name(PlannerKind kind) noexcept {
  switch (kind) {
    case PlannerKind::rrdt_star: return "rrdt";
    case PlannerKind::rrt_star: return "rrt";
    case PlannerKind::birrt_star: return "birrt";
    case PlannerKind::informed_rrt_star: return "informed";
    case PlannerKind::prm_star: return "prm";
  }
  return "?";
}

PlannerKind parse_planner(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '*' || c == '-' || c == '_' || std::isspace(static_cast<unsigned char>(c))) continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "rrdt" || key == "rrdtstar") return PlannerKind::rrdt_star;
  if (key == "rrt" || key == "rrtstar") return PlannerKind::rrt_star;
  if (key == "birrt" || key == "birrtstar") return PlannerKind::birrt_star;
  if (key == "informed" || key == "informedrrt" || key == "informedrrtstar") return PlannerKind::informed_rrt_star;
  if (key == "prm" || key == "prmstar") return PlannerKind::prm_star;
  throw InputError("unknown planner: '" + std::string(name) + "'");
}

PlannerResult plan(PlannerKind kind, const Scenario& s, const Environment& env, const PlanOptions& opt) {
  switch (kind) {
    case PlannerKind::rrdt_star: return plan_rrdt_star(s, env, opt);
    case PlannerKind::rrt_star: return plan_rrt_star(s, env, opt);
    case PlannerKind::birrt_star: return plan_birrt_star(s, env, opt);
    case PlannerKind::informed_rrt_star: return plan_informed_rrt_star(s, env, opt);
    case PlannerKind::prm_star: return plan_prm_star(s, env, opt);
  }
  throw std::logic_error("unhandled planner kind");
}

}  // namespace rrdt
