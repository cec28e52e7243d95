#pragma once

#include "cvsteer/coherent.hpp"
#include "cvsteer/key_security.hpp"
#include "cvsteer/protocol.hpp"
#include "cvsteer/random.hpp"
#include "cvsteer/steering.hpp"
#include "cvsteer/uncertainty.hpp"
#include "cvsteer/version.hpp"
