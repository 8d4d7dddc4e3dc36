// HTML rendering of the panel model. Every value shown here comes out of
// the model verbatim, which in turn holds the latest server response.

import type { Histogram, PanelModel } from './model.js'

function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;')
}

function button(action: string, label: string, enabled: boolean): string {
  const disabled = enabled ? '' : ' disabled'
  return `<button data-action="${action}"${disabled}>${label}</button>`
}

function renderHistogram(name: string, hist: Histogram): string {
  const outcomes = Object.keys(hist.counts).sort()
  if (outcomes.length === 0) {
    return `<div class="histogram" data-histogram="${name}">
      <h3>${name} outcomes</h3><p class="empty">no data</p></div>`
  }
  const max = Math.max(...outcomes.map((o) => hist.counts[o] ?? 0), 1)
  const bars = outcomes
    .map((outcome) => {
      const count = hist.counts[outcome] ?? 0
      const width = Math.round((100 * count) / max)
      return `<div class="bar-row" data-outcome="${escapeHtml(outcome)}">
        <span class="bar-label">${escapeHtml(outcome)}</span>
        <span class="bar" style="width:${width}%"></span>
        <span class="bar-count" data-count="${count}">${count}</span>
      </div>`
    })
    .join('')
  return `<div class="histogram" data-histogram="${name}">
    <h3>${name} outcomes (${hist.total})</h3>${bars}</div>`
}

export function renderApp(model: PanelModel): string {
  const notice = model.notice
    ? `<div class="notice" id="notice">${escapeHtml(model.notice)}
         ${model.boxId === null ? button('retry', 'Retry', true) : ''}</div>`
    : ''
  if (!model.panel) {
    return `<main class="panel">${notice}
      <p class="connecting">Connecting to the box…</p></main>`
  }
  const p = model.panel
  const canPress = (flag: boolean) => flag && !model.busy
  const lidLabel = p.lid === 'closed' ? 'Open lid' : 'Close lid'
  return `<main class="panel">
    ${notice}
    <header>
      <h1>Cat-in-a-box control panel</h1>
      <p class="meta">box seed: ${model.seed ?? '?'}</p>
    </header>
    <section class="lcd" id="lcd" data-display-id="${escapeHtml(p.display_id)}">
      <pre>${escapeHtml(p.display_text)}</pre>
    </section>
    <section class="leds">
      <span class="led ${p.led === 'white' ? 'on-white' : ''}" data-led-white>dead/alive</span>
      <span class="led ${p.led === 'green' ? 'on-green' : ''}" data-led-green>plus/minus</span>
      <span class="lid-state" data-lid="${p.lid}">lid: ${p.lid}</span>
    </section>
    <section class="controls">
      ${button('prepare', 'Prepare cat', canPress(p.buttons.prepare))}
      ${button('select_h', 'Select dead/alive', canPress(p.buttons.select))}
      ${button('select_s', 'Select plus/minus', canPress(p.buttons.select))}
      ${button('measure', 'Measure', canPress(p.buttons.measure))}
      ${button('lid', lidLabel, canPress(p.buttons.lid))}
    </section>
    <section class="stats">
      <h2>Outcome statistics</h2>
      <label>cycles <input id="stats-n" type="number" min="0" value="200"></label>
      ${button('stats_h', 'Run dead/alive cycles', !model.busy)}
      ${button('stats_s', 'Run plus/minus cycles', !model.busy)}
      <div class="histograms">
        ${renderHistogram('H', model.histograms['H'] ?? { counts: {}, total: 0 })}
        ${renderHistogram('S', model.histograms['S'] ?? { counts: {}, total: 0 })}
      </div>
    </section>
  </main>`
}
