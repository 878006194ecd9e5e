#pragma once

#include "revforge/circuit.hpp"
#include "revforge/circuit_json.hpp"
#include "revforge/connectivity.hpp"
#include "revforge/conservation.hpp"
#include "revforge/error.hpp"
#include "revforge/gate.hpp"
#include "revforge/groups.hpp"
#include "revforge/render.hpp"
#include "revforge/synthesis.hpp"
#include "revforge/universality.hpp"
#include "revforge/word.hpp"
