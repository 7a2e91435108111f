#pragma once

#include "plinform/bounds/certify.hpp"
#include "plinform/bounds/constants.hpp"
#include "plinform/bounds/lambert.hpp"
#include "plinform/bounds/yu.hpp"
