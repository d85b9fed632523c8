#pragma once

#include "wmha/exact_linalg.hpp"
#include "wmha/groupoid.hpp"
#include "wmha/groupoid_json.hpp"
#include "wmha/algebra.hpp"
#include "wmha/report.hpp"
#include "wmha/report_json.hpp"
#include "wmha/wmha_core.hpp"
#include "wmha/wmha_checks.hpp"
#include "wmha/separability.hpp"
#include "wmha/source_target.hpp"
#include "wmha/constructions.hpp"
#include "wmha/smash.hpp"
