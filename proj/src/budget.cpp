#include "pgroup/budget.hpp"

#include <cstdlib>

namespace pgroup {

namespace {

void override_from(const char* name, std::uint64_t& slot) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value, &end, 10);
  if (end != nullptr && *end == '\0') slot = parsed;
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  override_from("PGROUP_FORM_BUDGET", b.form_scan);
  override_from("PGROUP_ELEMENT_BUDGET", b.element_scan);
  override_from("PGROUP_GL_BUDGET", b.gl_search);
  override_from("PGROUP_SWEEP_BUDGET", b.sweep);
  return b;
}

}  // namespace pgroup
