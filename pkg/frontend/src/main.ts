// Browser bootstrap: render into #app and translate clicks into
// controller calls. The service base URL is the only configuration,
// via the ?service= query parameter.

import { CatboxClient } from './api.js'
import { PanelController } from './controller.js'
import type { EventName } from './model.js'
import { renderApp } from './view.js'

const app = document.querySelector<HTMLDivElement>('#app')
if (!app) {
  throw new Error('Missing #app container')
}

const baseUrl =
  new URLSearchParams(window.location.search).get('service') ??
  'http://127.0.0.1:8000'

const controller = new PanelController(new CatboxClient(baseUrl), (model) => {
  app.innerHTML = renderApp(model)
})

const PRESS_ACTIONS: ReadonlySet<string> = new Set<EventName>([
  'prepare',
  'select_h',
  'select_s',
  'measure',
])

app.addEventListener('click', (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>('[data-action]')
  if (!target || target.hasAttribute('disabled')) {
    return
  }
  const action = target.dataset['action']!
  if (PRESS_ACTIONS.has(action)) {
    void controller.press(action as EventName)
  } else if (action === 'lid') {
    void controller.toggleLid()
  } else if (action === 'stats_h' || action === 'stats_s') {
    const input = document.querySelector<HTMLInputElement>('#stats-n')
    const n = input ? Number.parseInt(input.value, 10) : 0
    void controller.runStats(action === 'stats_h' ? 'h' : 's', Number.isNaN(n) ? 0 : n)
  } else if (action === 'retry') {
    void controller.connect()
  }
})

void controller.connect()
