#pragma once

#include "fotw/component_tree.hpp"
#include "fotw/decomposition.hpp"
#include "fotw/error.hpp"
#include "fotw/eval.hpp"
#include "fotw/formula.hpp"
#include "fotw/fotw.hpp"
#include "fotw/game.hpp"
#include "fotw/graph.hpp"
#include "fotw/io.hpp"
#include "fotw/normal_forms.hpp"
#include "fotw/oracle.hpp"
#include "fotw/order.hpp"
#include "fotw/parse.hpp"
#include "fotw/random.hpp"
#include "fotw/structure.hpp"
#include "fotw/translate.hpp"
#include "fotw/treewidth.hpp"
#include "fotw/xenerp.hpp"
