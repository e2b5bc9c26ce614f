#pragma once

#include "coxmal/coxeter.hpp"
#include "coxmal/dihedral.hpp"
#include "coxmal/distribution.hpp"
#include "coxmal/group.hpp"
#include "coxmal/mallows.hpp"
#include "coxmal/mallows_checks.hpp"
#include "coxmal/moments.hpp"
#include "coxmal/normal_distance.hpp"
#include "coxmal/parallel.hpp"
#include "coxmal/qanalog.hpp"
#include "coxmal/report.hpp"
#include "coxmal/rng.hpp"
#include "coxmal/signed_permutation.hpp"
#include "coxmal/stein.hpp"
